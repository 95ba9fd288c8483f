"""Exact tools for integer polynomials.

Polynomials are plain lists of Python ints in *descending* order
(``[a0, a1, ..., aD]`` means ``a0 x^D + ... + aD``), which is the order the
Faber coefficients ``y_d`` come in.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

import numpy as np
import sympy

__all__ = [
    "strip",
    "horner",
    "eval_dyadic_sign",
    "sign_at",
    "sign_changes",
    "taylor_shift",
    "count_real_roots_in",
    "count_with_hints",
    "squarefree_factors",
    "poly_rem",
    "fp_is_irreducible",
    "fp_linear_times_irreducible",
]


def strip(p: Sequence[int]) -> list[int]:
    p = list(p)
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def horner(p: Sequence[int], x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def eval_scaled(p: Sequence[int], num: int, den: int) -> int:
    """``p(num/den) * den**deg`` as an exact integer."""
    acc = 0
    dp = 1
    # coefficient a_i carries den**i after the multiplication by den**deg
    for c in p:
        acc = acc * num + c * dp
        dp *= den
    return acc


def eval_dyadic_sign(p: Sequence[int], a: int, e: int) -> int:
    """Sign of ``p(a / 2**e)``."""
    acc = 0
    for i, c in enumerate(p):
        acc = acc * a + (c << (e * i))
    return _sgn(acc)


def sign_at(p: Sequence[int], x) -> int:
    x = Fraction(x)
    return _sgn(eval_scaled(p, x.numerator, x.denominator))


def sign_changes(seq) -> int:
    n = 0
    last = 0
    for c in seq:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                n += 1
            last = s
    return n


def taylor_shift(p: Sequence[int], c: int = 1) -> list[int]:
    """Descending coefficients of ``p(x + c)``."""
    d = list(p)
    n = len(d) - 1
    if c == 1:
        for t in range(n):
            d[: n + 1 - t] = accumulate(d[: n + 1 - t])
    elif c:
        step = lambda acc, y: acc * c + y  # noqa: E731
        for t in range(n):
            d[: n + 1 - t] = accumulate(d[: n + 1 - t], step)
    return d


def _scale_var(p: Sequence[int], s: int) -> list[int]:
    """``p(s x)``."""
    n = len(p) - 1
    return [c * s ** (n - i) for i, c in enumerate(p)]


def _unit_interval_poly(p: Sequence[int], a: Fraction, b: Fraction) -> list[int]:
    """Integer polynomial whose roots in (0,1) correspond to roots of p in (a,b)."""
    L = math.lcm(a.denominator, b.denominator)
    A = int(a * L)
    B = int((b - a) * L)
    n = len(p) - 1
    q = [c * L**i for i, c in enumerate(p)]  # p(x / L) * L^n
    q = taylor_shift(q, A)
    q = _scale_var(q, B)
    del n
    return q


def _descartes_01(p: list[int]) -> int:
    """Sign variations of (1+x)^n p(1/(1+x)): upper bound for roots in (0,1)."""
    return sign_changes(taylor_shift(p[::-1], 1))


def _half_left(p: list[int]) -> list[int]:
    """``2^n p(x/2)``."""
    return [c << i for i, c in enumerate(p)]


def _isolate_count_01(p: list[int]) -> int:
    """Exact number of roots of a squarefree ``p`` in the open interval (0,1)."""
    count = 0
    stack = [p]
    while stack:
        q = stack.pop()
        v = _descartes_01(q)
        if v == 0:
            continue
        if v == 1:
            count += 1
            continue
        left = _half_left(q)
        right = taylor_shift(left, 1)
        # root exactly at the midpoint 1/2 shows up as a zero constant term of right
        if right[-1] == 0:
            count += 1
            right = right[:-1]
            left = _deflate_half(left)
        stack.append(left)
        stack.append(right)
    return count


def _deflate_half(left: list[int]) -> list[int]:
    """Divide ``left`` (which vanishes at x=1) by (x - 1)."""
    out = []
    acc = 0
    for c in left[:-1]:
        acc = acc + c
        out.append(acc)
    return out


def squarefree_factors(p: Sequence[int]) -> list[tuple[list[int], int]]:
    """Squarefree decomposition ``[(factor, multiplicity), ...]`` over Z."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(p), x, domain="ZZ")
    _, facs = poly.sqf_list()
    return [([int(c) for c in f.all_coeffs()], e) for f, e in facs]


def _is_squarefree(p: Sequence[int]) -> bool:
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(p), x, domain="ZZ")
    return poly.gcd(poly.diff(x)).degree() == 0


def _count_squarefree(p: list[int], a: Fraction, b: Fraction) -> int:
    if len(p) <= 1:
        return 0
    q = _unit_interval_poly(p, a, b)
    # roots exactly at the endpoints are outside the open interval; strip them
    while q and q[-1] == 0:
        q = q[:-1]
    while len(q) > 1 and horner(q, 1) == 0:
        q = _deflate_half(q)
    if len(q) <= 1:
        return 0
    return _isolate_count_01(q)


def count_real_roots_in(p: Sequence[int], a, b) -> int:
    """Number of real roots of ``p`` in the open interval ``(a, b)``, with multiplicity.

    ``a`` and ``b`` may be ints, Fractions or exact decimal strings.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    p = strip(p)
    if len(p) <= 1:
        if p == [0]:
            raise ValueError("zero polynomial has infinitely many roots")
        return 0
    total = 0
    for f, e in squarefree_factors(p):
        total += e * _count_squarefree(f, a, b)
    return total


def count_with_hints(p: Sequence[int], a, b, hints=()) -> int:
    """Like :func:`count_real_roots_in`, trying cheap sign evaluations first.

    ``hints`` are candidate separating points (floats or rationals).  If the
    number of sign changes seen at ``a``, the hints inside ``(a,b)`` and ``b``
    already equals ``deg p``, every root is real, simple and inside the
    interval, and no further work is needed.
    """
    a, b = Fraction(a), Fraction(b)
    p = strip(p)
    deg = len(p) - 1
    if deg <= 0:
        return count_real_roots_in(p, a, b)
    pts = [a]
    for h in hints:
        h = Fraction(h).limit_denominator(1 << 40) if isinstance(h, float) else Fraction(h)
        if a < h < b:
            pts.append(h)
    pts.append(b)
    pts.sort()
    signs = [sign_at(p, t) for t in pts]
    if signs[0] and signs[-1] and sign_changes(signs) == deg:
        return deg
    return count_real_roots_in(p, a, b)


def poly_rem(p: Sequence[int], h: Sequence[int]) -> list[int]:
    """Remainder of ``p`` modulo a monic integer polynomial ``h`` (exact)."""
    h = strip(h)
    if h[0] != 1:
        raise ValueError("divisor must be monic")
    r = list(strip(p))
    dh = len(h) - 1
    while len(r) - 1 >= dh and any(r):
        c = r[0]
        for i in range(1, dh + 1):
            r[i] -= c * h[i]
        r.pop(0)
    return strip(r) if r else [0]


# ---------------------------------------------------------------------------
# prime-field arithmetic for the mod-p screen


def _fp_trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _fp_mulmod(a: np.ndarray, b: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    """(a*b) mod f over F_p; ascending coefficient arrays, f monic."""
    if not len(a) or not len(b):
        return a[:0]
    prod = np.zeros(len(a) + len(b) - 1, dtype=object)
    for i, ai in enumerate(a):
        if ai:
            prod[i : i + len(b)] += int(ai) * b.astype(object)
    return _fp_rem(np.array([int(x) % p for x in prod], dtype=np.int64), f, p)


def _fp_rem(a: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    a = _fp_trim(a.copy() % p)
    n = len(f) - 1
    while len(a) - 1 >= n:
        c = int(a[-1])
        if c:
            shift = len(a) - 1 - n
            a[shift:] = (a[shift:] - c * f) % p
        a = _fp_trim(a)
        if len(a) == 0:
            break
    return a


def _fp_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = _fp_trim(a % p)
    b = _fp_trim(b % p)
    while len(b):
        inv = pow(int(b[-1]), p - 2, p)
        bm = (b * inv) % p
        a, b = b, _fp_rem(a, bm, p)
    if len(a):
        a = (a * pow(int(a[-1]), p - 2, p)) % p
    return a


def _frobenius_matrix(f: np.ndarray, p: int) -> np.ndarray:
    """Rows: x^{p*i} mod f for i < n, as coefficient vectors (object ints)."""
    n = len(f) - 1
    xp = _fp_powx(p, f, p)
    rows = np.zeros((n, n), dtype=object)
    cur = np.array([1], dtype=np.int64)
    for i in range(n):
        rows[i, : len(cur)] = [int(c) for c in cur]
        cur = _fp_mulmod(cur, xp, f, p)
    return rows


def _fp_powx(e: int, f: np.ndarray, p: int) -> np.ndarray:
    result = np.array([1], dtype=np.int64)
    base = _fp_rem(np.array([0, 1], dtype=np.int64), f, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _fp_mulmod(base, base, f, p)
    return result


def _apply_frob(Q: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
    """Map g(x) -> g(x)^p mod f using the Frobenius matrix."""
    n = Q.shape[0]
    w = np.zeros(n, dtype=object)
    w[: len(v)] = [int(c) for c in v]
    out = (w @ Q) % p
    return _fp_trim(np.array([int(c) for c in out], dtype=np.int64))


def _to_fp(coeffs_desc: Sequence[int], p: int) -> np.ndarray:
    return _fp_trim(np.array([int(c) % p for c in reversed(list(coeffs_desc))], dtype=np.int64))


def fp_is_irreducible(coeffs_desc: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p of a polynomial with unit leading coefficient mod p.

    Rabin's test: f of degree n is irreducible iff x^{p^n} = x mod f and
    gcd(x^{p^{n/r}} - x, f) = 1 for every prime r dividing n.
    """
    f = _to_fp(coeffs_desc, p)
    n = len(f) - 1
    if n < 1:
        return False
    if int(f[-1]) != 1:
        f = (f * pow(int(f[-1]), p - 2, p)) % p
    if n == 1:
        return True
    Q = _frobenius_matrix(f, p)
    x = np.array([0, 1], dtype=np.int64)
    powers = {}
    cur = _fp_trim(x.copy())
    for i in range(1, n + 1):
        cur = _apply_frob(Q, cur, p)
        powers[i] = cur
    xpn = powers[n]
    diff = _fp_sub(xpn, x, p)
    if len(diff):
        return False
    for r in sympy.primefactors(n):
        g = _fp_gcd(f, _fp_sub(powers[n // r], x, p), p)
        if len(g) - 1 > 0:
            return False
    return True


def _fp_sub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    m = max(len(a), len(b))
    out = np.zeros(m, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return _fp_trim(out % p)


def fp_linear_times_irreducible(coeffs_desc: Sequence[int], p: int) -> bool:
    """True if f factors mod p as (linear) * (irreducible of degree n-1), n >= 3."""
    f = _to_fp(coeffs_desc, p)
    n = len(f) - 1
    if n < 3:
        return False
    if int(f[-1]) != 1:
        f = (f * pow(int(f[-1]), p - 2, p)) % p
    xp = _fp_powx(p, f, p)
    g = _fp_gcd(f, _fp_sub(xp, np.array([0, 1], dtype=np.int64), p), p)
    if len(g) - 1 != 1:
        return False
    # cofactor f / g; a repeated root would leave g dividing it
    cof = _fp_divexact(f, g, p)
    if not len(_fp_rem(cof, g, p)):
        return False
    return fp_is_irreducible([int(c) for c in reversed(cof)], p)


def _fp_divexact(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = [int(c) for c in a]
    b = [int(c) for c in b]
    inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv % p
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] = (a[i + j] - c * bj) % p
    return np.array(q, dtype=np.int64)
