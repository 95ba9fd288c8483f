"""Miller basis forms g_{k,m} = q^m + O(q^{l+1}) and their Faber polynomials.

Write ``k = 12 l + k'`` with ``k'`` in ``{0,4,6,8,10,14}``.  The Faber
polynomial ``P`` (monic, degree ``D = l - m``) is defined by
``g_{k,m} = Delta^l E_k' P(j)``.  Its coefficients ``y_0 .. y_D`` solve a unit
lower-triangular system whose entries are coefficients of powers of ``j``
and whose right-hand side is the expansion of ``(q^-1 Delta)^-l / E_k'``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .qseries import KPRIMES, LaurentSeries, d_series, qj_rows_desc, series_basic, series_pow

__all__ = [
    "WeightDecomposition",
    "FaberPolynomial",
    "MillerForm",
    "decompose_weight",
    "faber_poly",
    "faber_via_reduction",
    "miller_form",
    "d1_closed_form",
    "coefficient_deviation",
    "write_faber",
    "read_faber",
]

# constant term of the degree-one Faber polynomial is 24*l - D1_SHIFT[k']
D1_SHIFT = {0: 744, 4: 984, 6: 240, 8: 1224, 10: 480, 14: 720}


@dataclass(frozen=True)
class WeightDecomposition:
    k: int
    ell: int
    kprime: int


@dataclass(frozen=True)
class FaberPolynomial:
    """Monic integer polynomial ``sum y_d x^(D-d)``."""

    k: int
    m: int
    D: int
    y: tuple[int, ...]

    @property
    def coeffs(self) -> list[int]:
        """Descending coefficient list (the same thing as ``y``)."""
        return list(self.y)

    def __call__(self, x):
        acc = 0
        for c in self.y:
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for d, c in enumerate(self.y):
            e = self.D - d
            if c == 0:
                continue
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c) + ("*" if mono else "")
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class MillerForm:
    k: int
    m: int
    expansion: LaurentSeries


def decompose_weight(k: int) -> WeightDecomposition:
    """Unique ``(l, k')`` with ``k = 12 l + k'``."""
    if k % 2:
        raise ValueError(f"weight must be even, got {k}")
    if k == 2:
        raise ValueError("weight 2 is not handled (k' = 14 would force l = -1)")
    kp = k % 12
    if kp == 2:
        kp = 14
    ell = (k - kp) // 12
    return WeightDecomposition(k, ell, kp)


def _check_km(k: int, m: int) -> WeightDecomposition:
    w = decompose_weight(k)
    if m > w.ell:
        raise ValueError(f"need m <= l = {w.ell}, got m = {m}")
    return w


def faber_poly(k: int, m: int) -> FaberPolynomial:
    """Faber polynomial by forward substitution on the triangular system.

    ``y_d = D_{l,d} - sum_{r<d} y_r c_{D-r, -(D-d)}``; the row of ``(q j)^(D-r)``
    needed for ``y_r``'s contributions is consumed once, top row first.
    """
    w = _check_km(k, m)
    D = w.ell - m
    rhs = d_series(w.ell, w.kprime, D + 1)
    acc = [0] * (D + 1)
    y = []
    for r, row in enumerate(qj_rows_desc(D)):
        yr = rhs[r] - acc[r]
        y.append(yr)
        if yr:
            # row = (q j)^(D-r); entry for equation d is row[d - r]
            for t in range(1, D - r + 1):
                acc[r + t] += yr * row[t]
    return FaberPolynomial(k, m, D, tuple(y))


def _base_form(w: WeightDecomposition, relprec: int) -> LaurentSeries:
    """``Delta^l E_k'`` with ``relprec`` known coefficients."""
    delta = series_basic("Delta", relprec + 1)
    base = series_pow(delta, w.ell)
    if w.kprime:
        base = base * series_basic(f"E{w.kprime}", max(relprec, 2))
    return base


def faber_via_reduction(k: int, m: int) -> FaberPolynomial:
    """Independent route: greedy elimination on actual q-expansions.

    Start from ``Delta^l E_k' j^D`` (which begins ``q^m``) and subtract multiples
    of ``Delta^l E_k' j^s`` to kill the coefficients of ``q^{m+1} .. q^l``.
    """
    w = _check_km(k, m)
    D = w.ell - m
    rel = D + 1
    base = _base_form(w, rel)
    j = series_basic("j", max(rel - 1, 2))
    jpows = [LaurentSeries.one(rel)]
    for _ in range(D):
        jpows.append(jpows[-1] * j)
    f = base * jpows[D]
    y = [1] + [0] * D
    for n in range(m + 1, w.ell + 1):
        a = f[n]
        if a:
            s = w.ell - n
            f = f - (base * jpows[s]).scale(a)
            y[n - m] -= a
    return FaberPolynomial(k, m, D, tuple(y))


def miller_form(k: int, m: int, order: int) -> MillerForm:
    """Exact q-expansion of ``g_{k,m}`` up to (excluding) ``q^order``."""
    w = _check_km(k, m)
    if order <= w.ell:
        raise ValueError(f"order must exceed l = {w.ell}")
    P = faber_poly(k, m)
    rel = order - m
    j = series_basic("j", max(rel - 1, 2))
    acc = LaurentSeries.one(rel)
    for c in P.y[1:]:
        acc = acc * j + c
    if P.D == 0:
        acc = LaurentSeries.one(rel)
    g = (_base_form(w, rel) * acc).truncate(order)
    return MillerForm(k, m, g)


def d1_closed_form(kprime: int, ell: int) -> tuple[int, int]:
    """Descending coefficients of the degree-one Faber polynomial for weight ``12 l + k'``."""
    if kprime not in KPRIMES:
        raise ValueError(f"unsupported k' = {kprime}")
    return (1, 24 * ell - D1_SHIFT[kprime])


def coefficient_deviation(P: FaberPolynomial) -> float:
    """``max_d |y_d d! / (2|k|)^d - 1|`` over ``d = 0..D`` (exact ratios, float result)."""
    K = 2 * abs(P.k)
    worst = Fraction(0)
    for d, yd in enumerate(P.y):
        dev = abs(Fraction(yd * math.factorial(d), K**d) - 1)
        worst = max(worst, dev)
    return float(worst)


def write_faber(path, P: FaberPolynomial) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"{P.k} {P.m} {P.D}\n")
        for c in P.y:
            fh.write(f"{c}\n")
    os.replace(tmp, path)


def read_faber(path) -> FaberPolynomial:
    with open(path, encoding="utf-8") as fh:
        k, m, D = (int(t) for t in fh.readline().split())
        y = tuple(int(line) for line in fh if line.strip())
    if len(y) != D + 1:
        raise ValueError(f"truncated Faber file {path}")
    return FaberPolynomial(k, m, D, y)


def cached_faber(k: int, m: int, cache_dir=None) -> FaberPolynomial:
    if cache_dir is None:
        return faber_poly(k, m)
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, f"faber_{k}_{m}.txt")
    if os.path.exists(path):
        return read_faber(path)
    P = faber_poly(k, m)
    write_faber(path, P)
    return P

