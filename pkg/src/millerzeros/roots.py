"""Zeros of Miller forms: certified Faber roots, j-inversion and classification.

A zero of ``g_{k,m}`` away from the elliptic points is ``tau`` with
``P(j(tau)) = 0``.  Real roots of ``P`` in ``(0, 1728)`` correspond exactly to
zeros on the arc ``{e^{i theta}: pi/2 < theta < 2 pi/3}``; everything else
lands off the arc.  Arc membership is decided by an exact root count and
cross-checked against certified inclusion disks from a simultaneous
(Aberth) iteration.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import mpmath
import numpy as np
from mpmath import mp

from . import intpoly
from .intpoly import count_with_hints, strip
from .miller import decompose_weight, faber_poly
from .modeval import j_and_derivative, j_at

__all__ = [
    "PrecisionExhausted",
    "RootDisk",
    "ZeroRecord",
    "ZeroSet",
    "complex_roots",
    "count_real_roots_in",
    "arc_hints",
    "count_arc_roots",
    "invert_j",
    "reduce_to_fundamental_domain",
    "zeros_of_miller",
    "equidistribution_discrepancy",
    "im_bound",
    "write_zeros_csv",
    "write_zeros_json",
]

RHO = complex(-0.5, math.sqrt(3) / 2)
C_LOGK = math.exp(2 * math.pi) / 1728


class PrecisionExhausted(ArithmeticError):
    pass


def count_real_roots_in(p: Sequence[int], a, b) -> int:
    """Exact number of real roots of ``p`` in the open interval ``(a, b)``, with multiplicity."""
    return intpoly.count_real_roots_in(p, a, b)


# ---------------------------------------------------------------------------
# certified complex roots


@dataclass(frozen=True)
class RootDisk:
    """A root of an integer polynomial inside the disk ``|z - center| <= radius``."""

    center: complex  # gmpy2.mpc in practice
    radius: float
    real: bool = False
    multiplicity: int = 1

    def as_complex(self) -> complex:
        return complex(self.center)


def _seed_roots(p: Sequence[int]) -> list[complex]:
    """Starting points on circles read off the Newton polygon of ``log|a_i|``.

    Each edge of the upper convex hull of ``(i, log|a_i|)`` predicts a group
    of roots of roughly equal modulus.  Only coefficient sizes are used, so
    huge coefficients cause no overflow.
    """
    n = len(p) - 1
    asc = list(reversed(p))
    pts = [(i, math.log(abs(c))) for i, c in enumerate(asc) if c]
    hull: list[tuple[int, float]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    seeds = []
    sigma = 0.7
    for (i0, l0), (i1, l1) in zip(hull, hull[1:]):
        cnt = i1 - i0
        radius = math.exp((l0 - l1) / cnt)
        for t in range(cnt):
            ang = 2 * math.pi * t / cnt + 2 * math.pi * i1 / n + sigma
            seeds.append(radius * complex(math.cos(ang), math.sin(ang)))
    # zero roots (a_0 = 0 ...) sit at the origin; nudge them apart
    while len(seeds) < n:
        seeds.append(1e-3 * complex(math.cos(len(seeds)), math.sin(len(seeds))))
    return seeds


def _horner_with_derivative(p, z):
    v = p[0]
    dv = 0
    for c in p[1:]:
        dv = dv * z + v
        v = v * z + c
    return v, dv


def _aberth(pc, z: list, prec: int, max_iter: int, absp=None) -> tuple[list, bool]:
    """Gauss-Seidel Aberth iteration.

    A root is frozen once ``|p(z)|`` drops to the rounding-noise level of the
    Horner evaluation; with large coefficients that happens long before the
    corrections reach ``2^-prec``.
    """
    n = len(z)
    u = gmpy2.mpfr(2) ** (-prec)
    if absp is None:
        absp = [abs(c) for c in pc]
    frozen = [False] * n
    tol = gmpy2.mpfr(2) ** (-(prec - 8))
    for _ in range(max_iter):
        moved = False
        for i in range(n):
            if frozen[i]:
                continue
            zi = z[i]
            v, dv = _horner_with_derivative(pc, zi)
            az = abs(zi)
            noise = absp[0]
            for c in absp[1:]:
                noise = noise * az + c
            if abs(v) <= 64 * (n + 1) * u * noise:
                frozen[i] = True
                continue
            ratio = v / dv if dv != 0 else gmpy2.mpc(0)
            s = gmpy2.mpc(0)
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d != 0:
                        s += 1 / d
            den = 1 - ratio * s
            w = ratio / den if den != 0 else ratio
            z[i] = zi - w
            moved = True
            if abs(w) <= tol * max(az, gmpy2.mpfr(1)):
                frozen[i] = True
        if not moved:
            return z, True
    return z, all(frozen)


def _inclusion_radii(p: Sequence[int], pc, z: list, prec: int) -> list:
    """Radii ``n |W_i|`` (Weierstrass corrections) with a rounding-error allowance."""
    n = len(z)
    u = gmpy2.mpfr(2) ** (-prec)
    absp = [gmpy2.mpfr(abs(c)) for c in p]
    radii = []
    for i in range(n):
        zi = z[i]
        v = pc[0]
        for c in pc[1:]:
            v = v * zi + c
        az = abs(zi)
        bound = absp[0]
        for c in absp[1:]:
            bound = bound * az + c
        err = 4 * (n + 1) * u * bound
        den = abs(pc[0])
        for j in range(n):
            if j != i:
                den *= abs(zi - z[j])
        den *= 1 - 4 * n * n * u
        if den <= 0:
            radii.append(gmpy2.inf())
        else:
            radii.append(n * (abs(v) + err) / den)
    return radii


def _disjoint(z, r) -> bool:
    n = len(z)
    order = sorted(range(n), key=lambda i: (z[i].real - r[i]))
    # sweep along the real axis; only overlapping x-ranges need a distance check
    active = []
    for i in order:
        lo = z[i].real - r[i]
        active = [j for j in active if z[j].real + r[j] >= lo]
        for j in active:
            if abs(z[i] - z[j]) <= r[i] + r[j]:
                return False
        active.append(i)
    return True


def _real_flags(z, r) -> list[bool]:
    """A disk whose conjugation-symmetric hull meets no other disk holds a real root."""
    n = len(z)
    flags = []
    for i in range(n):
        R = abs(z[i].imag) + r[i]
        c = z[i].real
        ok = True
        for j in range(n):
            if j != i and abs(z[j] - c) <= R + r[j]:
                ok = False
                break
        flags.append(ok)
    return flags


def _certify(p: Sequence[int], tol: float, prec0: int, max_prec: int) -> list[RootDisk]:
    n = len(p) - 1
    seeds = _seed_roots(p)
    prec = prec0
    z = None
    while prec <= max_prec:
        with gmpy2.context(gmpy2.get_context(), precision=prec):
            pc = [gmpy2.mpc(c) for c in p]
            if z is None:
                z = [gmpy2.mpc(complex(s)) for s in seeds]
            else:
                z = [gmpy2.mpc(x) for x in z]
            z, _converged = _aberth(pc, z, prec, max_iter=60 + 4 * n)
            r = _inclusion_radii(p, pc, z, prec)
            if all(x <= tol for x in r) and _disjoint(z, r):
                flags = _real_flags(z, r)
                out = []
                for zi, ri, fl in zip(z, r, flags):
                    c = gmpy2.mpc(zi.real, 0) if fl else zi
                    out.append(RootDisk(c, float(ri), fl))
                return out
        prec *= 2
    raise PrecisionExhausted(f"could not certify roots of a degree-{n} polynomial up to {max_prec} bits")


def _start_precision(p: Sequence[int]) -> int:
    return 64 + max(abs(c).bit_length() for c in p)


def complex_roots(p: Sequence[int], tol: float = 1e-30, max_prec: int | None = None) -> list[RootDisk]:
    """All complex roots of an integer polynomial with certified inclusion radii.

    Each returned disk contains exactly one root (counted with multiplicity
    when the polynomial has repeated factors) and has radius at most ``tol``.
    Sorted by real part, then imaginary part.
    """
    p = strip([int(c) for c in p])
    if len(p) < 2:
        raise ValueError("need a polynomial of degree at least 1")
    prec0 = _start_precision(p)
    if max_prec is None:
        max_prec = max(16 * prec0, 4096)
    if len(p) == 2:
        root = gmpy2.mpc(gmpy2.mpq(-p[1], p[0]))
        out = [RootDisk(root, 0.0, True)]
    else:
        try:
            out = _certify(p, tol, prec0, min(max_prec, 4 * prec0))
        except PrecisionExhausted:
            facs = intpoly.squarefree_factors(p)
            if len(facs) == 1 and facs[0][1] == 1:
                out = _certify(p, tol, 4 * prec0, max_prec)
            else:
                out = []
                for f, e in facs:
                    if len(f) < 2:
                        continue
                    for d in complex_roots(f, tol, max_prec):
                        out.append(RootDisk(d.center, d.radius, d.real, e))
    return sorted(out, key=lambda d: (d.center.real, d.center.imag))


# ---------------------------------------------------------------------------
# arc hints and exact counting


def _j_on_arc(theta: np.ndarray) -> np.ndarray:
    """Real value of j(e^{i theta}) in double precision (enough for hints)."""
    tau = np.exp(1j * theta)
    q = np.exp(2j * np.pi * tau)
    n = np.arange(1, 40)
    qn = q[:, None] ** n
    sig3 = np.array([sum(d**3 for d in range(1, k + 1) if k % d == 0) for k in n])
    e4 = 1 + 240 * (qn * sig3).sum(axis=1)
    delta = q * np.prod(1 - qn, axis=1) ** 24
    return (e4**3 / delta).real


_MAX_HINT_GRID = 5_000_000


def arc_hints(k: int, m: int, oversample: int = 24) -> list[float]:
    """j-values on the arc where ``2 cos(k theta/2 + 2 pi m cos theta)`` has extrema.

    Consecutive hints usually bracket exactly one arc zero, so sign changes
    of the Faber polynomial at these points certify roots cheaply.  For very
    large weights the phase is meaningless in double precision and no hints
    are returned (exact counting takes over).
    """
    w = decompose_weight(k)
    D = abs(w.ell - m)
    npts = oversample * (D + abs(k) // 12 + 10)
    if npts > _MAX_HINT_GRID:
        return []
    theta = np.linspace(math.pi / 2, 2 * math.pi / 3, npts)
    phase = (k * theta / 2 + 2 * math.pi * m * np.cos(theta)) / math.pi
    fl = np.floor(phase)
    idx = np.flatnonzero(fl[1:] != fl[:-1])
    hints = []
    for i in idx:
        target = max(fl[i], fl[i + 1])
        t = (target - phase[i]) / (phase[i + 1] - phase[i])
        hints.append(theta[i] + t * (theta[i + 1] - theta[i]))
    if not hints:
        return []
    vals = _j_on_arc(np.array(hints))
    return [float(v) for v in vals if 0 < v < 1728]


def count_arc_roots(P, hints: Iterable[float] | None = None) -> int:
    """Exact number of roots of a Faber polynomial in ``(0, 1728)``."""
    if P.D == 0:
        return 0
    if hints is None:
        hints = arc_hints(P.k, P.m)
    return count_with_hints(list(P.y), 0, 1728, hints)


# ---------------------------------------------------------------------------
# the fundamental domain


def reduce_to_fundamental_domain(tau, tol: float = 1e-25):
    """Return ``(tau', gamma)`` with ``tau' = gamma tau`` in the standard domain.

    Convention: ``-1/2 <= Re tau' < 1/2``; on the unit circle ``Re tau' <= 0``.
    ``gamma`` is a 2x2 integer matrix (tuple of rows) of determinant 1.
    """
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10_000):
        n = int(mpmath.floor(tau.real + mpmath.mpf(1) / 2))
        if n:
            tau -= n
            a, b = a - n * c, b - n * d
        if abs(tau) < 1 - tol:
            tau = -1 / tau
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise PrecisionExhausted("reduction did not terminate")
    # boundary conventions
    if tau.real >= mpmath.mpf(1) / 2 - tol:
        tau -= 1
        a, b = a - c, b - d
    if abs(abs(tau) - 1) <= tol and tau.real > tol:
        tau = -1 / tau
        a, b, c, d = -c, -d, a, b
    if c < 0 or (c == 0 and d < 0):
        a, b, c, d = -a, -b, -c, -d
    return tau, ((a, b), (c, d))


def _arc_point(x, prec: int):
    """Point ``e^{i theta}`` on the arc with ``j = x`` for real ``0 <= x <= 1728``."""
    with mpmath.workprec(prec):
        x = mpmath.mpf(x)
        if x == 1728:
            return mpmath.mpc(0, 1)
        if x == 0:
            return mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)

        def f(t):
            return mpmath.re(j_at(mpmath.expj(t), prec)) - x

        lo, hi = mp.pi / 2, 2 * mp.pi / 3
        flo, fhi = 1728 - x, -x
        # Illinois false position with bisection safeguard
        side = 0
        for _ in range(4 * prec):
            if hi - lo < mpmath.mpf(2) ** (-prec + 4):
                break
            mid = (lo * fhi - hi * flo) / (fhi - flo)
            if not lo < mid < hi or side == 3:
                mid = (lo + hi) / 2
                side = 0
            fm = f(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
                fhi = fhi / 2 if side == -1 else fhi
                side = -1 if side != -1 else 3
            else:
                hi, fhi = mid, fm
                flo = flo / 2 if side == 1 else flo
                side = 1 if side != 1 else 3
        return mpmath.expj((lo + hi) / 2)


_GRID = None


def _coarse_grid():
    global _GRID
    if _GRID is None:
        xs = np.linspace(-0.5, 0.5, 61)
        ys = np.linspace(0.8, 3.0, 80)
        X, Y = np.meshgrid(xs, ys)
        T = (X + 1j * Y).ravel()
        T = T[np.abs(T) >= 0.999]
        q = np.exp(2j * np.pi * T)
        n = np.arange(1, 40)
        qn = q[:, None] ** n
        sig3 = np.array([sum(d**3 for d in range(1, k + 1) if k % d == 0) for k in n])
        e4 = 1 + 240 * (qn * sig3).sum(axis=1)
        delta = q * np.prod(1 - qn, axis=1) ** 24
        _GRID = (T, e4**3 / delta)
    return _GRID


def invert_j(x, tol: float = 1e-25, prec: int | None = None):
    """A point ``tau`` in the standard fundamental domain with ``j(tau) = x``.

    Real ``x`` in ``[0, 1728]`` goes through a bracketed solve along the arc;
    otherwise Newton's method in ``tau`` (using ``j' = -2 pi i E6/E4 j``),
    reducing into the fundamental domain after every step.
    """
    if prec is None:
        prec = max(64, int(-math.log2(tol)) + 30)
    with mpmath.workprec(prec):
        x = mpmath.mpc(x)
        if x.imag == 0 and 0 <= x.real <= 1728:
            return _arc_point(x.real, prec)
        ax = abs(x)
        if ax > 5000:
            q0 = 1 / (x - 744)
            tau = mpmath.log(q0) / (2j * mp.pi)
            tau = mpmath.mpc(tau.real, abs(tau.imag))
        else:
            T, J = _coarse_grid()
            i = int(np.argmin(np.abs(J - complex(x))))
            tau = mpmath.mpc(T[i])
        tau, _ = reduce_to_fundamental_domain(tau, tol)
        scale = max(ax, 1)
        target = mpmath.mpf(2) ** (-prec + 12) * scale
        for it in range(8 * prec):
            jv, dj = j_and_derivative(tau, prec)
            err = jv - x
            if abs(err) <= target:
                break
            if dj == 0:
                tau += mpmath.mpc(1e-6, 1e-6)
                continue
            step = err / dj
            # damp huge steps; j' vanishes at the elliptic points
            if abs(step) > 0.25:
                step *= 0.25 / abs(step)
            new = tau - step
            if new.imag <= 0:
                new = mpmath.mpc(new.real, tau.imag / 2)
            tau, _ = reduce_to_fundamental_domain(new, tol)
        else:
            raise PrecisionExhausted(f"Newton inversion of j failed for {x}")
        tau, _ = reduce_to_fundamental_domain(tau, tol)
        return tau


# ---------------------------------------------------------------------------
# zero sets


@dataclass
class ZeroRecord:
    jroot: complex
    jradius: float
    tau: complex
    tau_radius: float
    kind: str  # arc | elliptic_rho | elliptic_i | off_arc
    multiplicity_hint: int = 1


@dataclass
class ZeroSet:
    k: int
    m: int
    zeros: list = field(default_factory=list)

    @property
    def counts(self) -> tuple[int, int, int]:
        on = sum(z.multiplicity_hint for z in self.zeros if z.kind == "arc")
        off = sum(z.multiplicity_hint for z in self.zeros if z.kind == "off_arc")
        ell = sum(z.multiplicity_hint for z in self.zeros if z.kind.startswith("elliptic"))
        return on, off, ell


def _deflate_root(p: list[int], r: int) -> tuple[list[int], int]:
    """Divide out ``(x - r)`` as often as it divides ``p`` exactly."""
    mult = 0
    while len(p) > 1 and intpoly.horner(p, r) == 0:
        out = []
        acc = 0
        for c in p[:-1]:
            acc = acc * r + c
            out.append(acc)
        p = out
        mult += 1
    return p, mult


def _to_mpf(x):
    """Exact conversion of a gmpy2 mpfr to an mpmath mpf."""
    man, exp = gmpy2.mpfr(x).as_mantissa_exp()
    return mpmath.ldexp(mpmath.mpf(int(man)), int(exp))


def _tau_radius(tau, jradius: float, prec: int) -> float:
    if jradius == 0:
        return 0.0
    _, dj = j_and_derivative(tau, prec)
    adj = float(abs(dj))
    if adj < 1e-300:
        return math.inf
    return 2.0 * jradius / adj


def zeros_of_miller(k: int, m: int, tol: float = 1e-20, prec: int | None = None) -> ZeroSet:
    """Locate and classify the non-forced zeros of ``g_{k,m}`` in the fundamental domain."""
    P = faber_poly(k, m)
    zs = ZeroSet(k, m)
    if P.D == 0:
        return zs
    if prec is None:
        prec = max(80, int(-math.log2(tol)) + 40)
    p = list(P.y)
    p, m0 = _deflate_root(p, 0)
    p, m1728 = _deflate_root(p, 1728)
    if m0:
        zs.zeros.append(ZeroRecord(0, 0.0, mpmath.mpc(-0.5, mpmath.sqrt(3) / 2), 0.0, "elliptic_rho", m0))
    if m1728:
        zs.zeros.append(ZeroRecord(1728, 0.0, mpmath.mpc(0, 1), 0.0, "elliptic_i", m1728))
    if len(p) < 2:
        return zs
    exact_arc = count_with_hints(p, 0, 1728, arc_hints(k, m))
    t = tol
    for _attempt in range(4):
        disks = complex_roots(p, t)
        arc = [d for d in disks if d.real and 0 < d.center.real - d.radius and d.center.real + d.radius < 1728]
        ambiguous = [
            d for d in disks
            if d not in arc and abs(d.center.imag) <= d.radius + 1e-300
            and d.center.real + d.radius > 0 and d.center.real - d.radius < 1728
        ]
        n_arc = sum(d.multiplicity for d in arc)
        if n_arc == exact_arc and not ambiguous:
            break
        t = t * 1e-10
    else:
        raise PrecisionExhausted(f"exact and numeric arc counts disagree for (k,m)=({k},{m})")
    for d in disks:
        with mpmath.workprec(prec):
            if d in arc:
                x = _to_mpf(d.center.real)
                tau = _arc_point(x, prec)
                kind = "arc"
                jroot = mpmath.mpc(x, 0)
            else:
                jroot = mpmath.mpc(_to_mpf(d.center.real), _to_mpf(d.center.imag))
                tau = invert_j(jroot, tol=min(tol, 1e-15), prec=prec)
                kind = "off_arc"
            zs.zeros.append(ZeroRecord(jroot, d.radius, tau, _tau_radius(tau, d.radius, prec), kind, d.multiplicity))
    zs.zeros.sort(key=lambda z: (z.kind, float(mpmath.re(z.tau)), float(mpmath.im(z.tau))))
    return zs


def equidistribution_discrepancy(zs, alpha: float, beta: float) -> float:
    """Star discrepancy of arc-zero angles in ``[alpha, beta]`` against the uniform law.

    ``zs`` is a :class:`ZeroSet` or an iterable of angles.  All arc zeros are
    used (no subset selection); this is a diagnostic.
    """
    if not alpha < beta:
        raise ValueError("need alpha < beta")
    if isinstance(zs, ZeroSet):
        angles = [float(mpmath.arg(z.tau)) for z in zs.zeros if z.kind == "arc"]
    else:
        angles = [float(a) for a in zs]
    u = sorted((a - alpha) / (beta - alpha) for a in angles if alpha <= a <= beta)
    n = len(u)
    if n == 0:
        raise ValueError("no arc zeros in the window; discrepancy undefined")
    return max(max((i + 1) / n - x, x - i / n) for i, x in enumerate(u))


def im_bound(k: int, slack: float = 10.0) -> float:
    """``2 log|k| / (1 - c) + slack`` with ``c = e^{2 pi}/1728``."""
    return 2 * math.log(abs(k)) / (1 - C_LOGK) + slack


def _dec(x, digits: int = 40) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False) if x != 0 else "0"


def _rows(zs: ZeroSet, digits: int):
    for z in zs.zeros:
        jr = mpmath.mpc(z.jroot)
        tau = mpmath.mpc(z.tau)
        yield {
            "k": zs.k,
            "m": zs.m,
            "re_j": _dec(jr.real, digits),
            "im_j": _dec(jr.imag, digits),
            "radius": repr(float(z.jradius)),
            "re_tau": _dec(tau.real, digits),
            "im_tau": _dec(tau.imag, digits),
            "kind": z.kind,
        }


def write_zeros_csv(zs: ZeroSet, path, digits: int = 40) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=["k", "m", "re_j", "im_j", "radius", "re_tau", "im_tau", "kind"])
        w.writeheader()
        for row in _rows(zs, digits):
            w.writerow(row)


def write_zeros_json(zs: ZeroSet, path, digits: int = 40) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"k": zs.k, "m": zs.m, "zeros": list(_rows(zs, digits))}, fh, indent=1)
        fh.write("\n")
