"""Algebraic (CM) zeros of Miller forms.

A non-elliptic algebraic zero ``z`` of ``g_{k,m}`` makes ``j(z)`` a root of the
Faber polynomial, so the Hilbert class polynomial of the order of ``z`` divides
it.  For ``D = 1`` this pins down ``l`` from ``j(z)`` directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import sympy

from .intpoly import fp_is_irreducible, fp_linear_times_irreducible, poly_rem
from .miller import D1_SHIFT, decompose_weight, faber_poly
from .modeval import j_at

__all__ = [
    "HilbertClassPoly",
    "CMZeroReport",
    "PrecisionExhausted",
    "UnsupportedRange",
    "reduced_forms",
    "cm_point",
    "hilbert_class_poly",
    "CLASS_NUMBER_ONE",
    "d1_classification",
    "check_cm_zero",
    "modp_screen",
    "MAX_CLASS_NUMBER",
    "MAX_DIVISIBILITY_DEGREE",
]

MAX_CLASS_NUMBER = 32
MAX_DIVISIBILITY_DEGREE = 10
CLASS_NUMBER_ONE = (3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163)


class PrecisionExhausted(ArithmeticError):
    pass


class UnsupportedRange(ValueError):
    pass


@dataclass(frozen=True)
class HilbertClassPoly:
    disc: int
    h: int
    coeffs: tuple[int, ...]  # descending, monic

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class CMZeroReport:
    k: int
    m: int
    disc: int
    divisible: bool
    residue_norm: int


def _check_disc(d: int) -> None:
    if d <= 0 or (-d) % 4 not in (0, 1):
        raise ValueError(f"need d > 0 with -d = 0 or 1 mod 4, got {d}")


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """Primitive reduced forms ``(a, b, c)`` with ``b^2 - 4ac = -d``."""
    _check_disc(d)
    out = []
    a = 1
    while 3 * a * a <= d:
        for b in range(-a + 1, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return out


def cm_point(d: int):
    """``sqrt(-d)/2`` or ``(1 + sqrt(-d))/2`` as an mpc (``i sqrt(d)/2`` for ``-d = 0 mod 4``)."""
    _check_disc(d)
    half = mpmath.sqrt(d) / 2
    return mpmath.mpc(0 if d % 4 == 0 else 0.5, half)


def hilbert_class_poly(d: int, prec: int | None = None, max_prec: int = 20000) -> HilbertClassPoly:
    """Minimal polynomial of ``j((-b + sqrt(-d))/2a)`` over the reduced forms."""
    forms = reduced_forms(d)
    h = len(forms)
    if h > MAX_CLASS_NUMBER:
        raise UnsupportedRange(f"class number {h} exceeds cap {MAX_CLASS_NUMBER}")
    if prec is None:
        prec = int(math.pi * math.sqrt(d) * h / math.log(2)) + 64
    while prec <= max_prec:
        with mpmath.workprec(prec):
            sq = mpmath.sqrt(d)
            poly = [mpmath.mpc(1)]
            for a, b, _ in forms:
                tau = mpmath.mpc(-b, sq) / (2 * a)
                jv = j_at(tau, prec)
                # multiply by (x - jv)
                new = poly + [mpmath.mpc(0)]
                for i in range(1, len(new)):
                    new[i] -= jv * poly[i - 1]
                poly = new
            coeffs = [int(mpmath.nint(mpmath.re(c))) for c in poly]
            margin = max(max(abs(mpmath.re(c) - n), abs(mpmath.im(c))) for c, n in zip(poly, coeffs))
            if margin < 0.01:
                return HilbertClassPoly(-d, h, tuple(coeffs))
        prec *= 2
    raise PrecisionExhausted(f"could not round the class polynomial of -{d}")


def _zero_label(d: int) -> str:
    return f"sqrt(-{d})/2" if d % 4 == 0 else f"(1+sqrt(-{d}))/2"


def d1_classification() -> list[dict]:
    """CM zeros of ``g_{k, l-1}`` for all class-number-one orders and all ``k'``.

    Each row has ``disc, zero, kprime, ell, k`` and ``weak`` (``l < 0``).
    Elliptic points and non-integral ``l`` are dropped.
    """
    rows = []
    for d in CLASS_NUMBER_ONE:
        H = hilbert_class_poly(d)
        jv = -H.coeffs[1]
        if jv in (0, 1728):
            continue
        for kp in sorted(D1_SHIFT):
            # x + 24 l - shift vanishes at x = j
            num = D1_SHIFT[kp] - jv
            if num % 24:
                continue
            ell = num // 24
            rows.append({"disc": -d, "zero": _zero_label(d), "kprime": kp, "ell": ell,
                         "k": 12 * ell + kp, "weak": ell < 0})
    return rows


def check_cm_zero(k: int, m: int, d: int, prec: int | None = None) -> CMZeroReport:
    """Exact test of whether the class polynomial of ``-d`` divides the Faber polynomial."""
    w = decompose_weight(k)
    D = w.ell - m
    if D > MAX_DIVISIBILITY_DEGREE:
        raise UnsupportedRange(f"D = {D} exceeds cap {MAX_DIVISIBILITY_DEGREE}")
    H = hilbert_class_poly(d, prec)
    if H.h > max(D, 0):
        raise UnsupportedRange(f"class number {H.h} exceeds D = {D}")
    P = faber_poly(k, m)
    r = poly_rem(P.coeffs, H.coeffs)
    norm = max((abs(c) for c in r), default=0)
    return CMZeroReport(k, m, -d, norm == 0, norm)


def modp_screen(kprime: int, D: int, ell_eval: int = 0, prime_budget: int = 100) -> dict:
    """Look for primes witnessing irreducibility and a (linear) x (irreducible) split.

    The polynomial screened is the Faber polynomial of weight ``12 ell_eval + k'``
    and degree ``D``.  Both witnesses together rule out a dihedral Galois group
    (and hence CM roots) for that specialisation.
    """
    if not 1 <= D <= 100:
        raise UnsupportedRange("need 1 <= D <= 100")
    k = 12 * ell_eval + kprime
    P = faber_poly(k, ell_eval - D)
    report = {"kprime": kprime, "D": D, "ell_eval": ell_eval, "p": None, "q": None, "status": "inconclusive"}
    if D == 1:
        report["status"] = "degenerate"
        return report
    for p in sympy.primerange(2, sympy.prime(prime_budget) + 1):
        if report["p"] is None and fp_is_irreducible(P.coeffs, p):
            report["p"] = int(p)
        if report["q"] is None and fp_linear_times_irreducible(P.coeffs, p):
            report["q"] = int(p)
        if report["p"] is not None and report["q"] is not None:
            report["status"] = "witnessed"
            break
    return report


def cm_report_rows(rows: list[dict]) -> list[dict]:
    """Deterministic JSON-ready ordering: disc descending, then k'."""
    return sorted(rows, key=lambda r: (r["disc"], r["kprime"]), reverse=False)
