"""Numerical evaluation of E4, E6, Delta and j at a point of the upper half-plane.

All routines take a working precision in bits and return mpmath values.  The
q-series are summed until the remaining tail is provably below the working
precision: with ``|q| = r < 1`` every tail used here is dominated by
``sum n^s r^n``, which is bounded by a geometric series once ``n`` is large.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mp

__all__ = ["q_of", "eisenstein_at", "delta_at", "j_at", "j_and_derivative", "log_abs_delta"]


def q_of(tau):
    return mpmath.exp(2j * mp.pi * tau)


def _nterms(r: float, prec: int, power: int) -> int:
    """Terms needed so that sum_{n>N} n^power r^n < 2^-prec (r < 1)."""
    if r <= 0:
        return 1
    lr = -math.log(r)
    n = 1
    target = prec * math.log(2) + 10
    while n * lr - power * math.log(n + 1) - math.log(1 / (1 - r) + 1) < target:
        n += max(1, n // 4)
    return n


def eisenstein_at(k: int, tau, prec: int = 53):
    """E_k(tau) for k in {4, 6} via the Lambert series ``1 + c sum n^{k-1} q^n/(1-q^n)``."""
    c = {4: 240, 6: -504}[k]
    with mpmath.workprec(prec + 20):
        q = q_of(mpmath.mpmathify(tau))
        N = _nterms(float(abs(q)), prec + 20, k)
        s = mpmath.mpf(0)
        qn = mpmath.mpf(1)
        for n in range(1, N + 1):
            qn *= q
            s += mpmath.mpf(n) ** (k - 1) * qn / (1 - qn)
        return 1 + c * s


def delta_at(tau, prec: int = 53):
    """Delta(tau) = q prod (1 - q^n)^24."""
    with mpmath.workprec(prec + 20):
        tau = mpmath.mpmathify(tau)
        q = q_of(tau)
        N = _nterms(float(abs(q)), prec + 20, 1)
        p = mpmath.mpf(1)
        qn = mpmath.mpf(1)
        for _ in range(N):
            qn *= q
            p *= 1 - qn
        return q * p**24


def j_at(tau, prec: int = 53):
    """j(tau) = E4^3 / Delta."""
    with mpmath.workprec(prec + 20):
        e4 = eisenstein_at(4, tau, prec + 20)
        return e4**3 / delta_at(tau, prec + 20)


def j_and_derivative(tau, prec: int = 53):
    """``(j, dj/dtau)`` using ``j' = -2 pi i (E6/E4) j``."""
    with mpmath.workprec(prec + 20):
        e4 = eisenstein_at(4, tau, prec + 20)
        e6 = eisenstein_at(6, tau, prec + 20)
        d = delta_at(tau, prec + 20)
        j = e4**3 / d
        dj = -2j * mp.pi * e6 * e4**2 / d
        return j, dj


def log_abs_delta(tau, prec: int = 53):
    """``ln |Delta(tau)|`` computed from the product, avoiding underflow for large Im tau."""
    with mpmath.workprec(prec + 20):
        tau = mpmath.mpmathify(tau)
        q = q_of(tau)
        N = _nterms(float(abs(q)), prec + 20, 1)
        s = -2 * mp.pi * mpmath.im(tau)
        qn = mpmath.mpf(1)
        for _ in range(N):
            qn *= q
            s += 24 * mpmath.log(abs(1 - qn))
        return s
