"""Szegő curve, its logarithmic versions in the upper half-plane, and related diagnostics.

The Szegő curve ``S = {z : |z e^{1-z}| = 1, |z| <= 1}`` is star-shaped about 0:
in polar form ``r(phi) = u^{-1}(cos phi)`` with ``u(x) = (1 + ln x)/x`` on
``[W(1/e), 1]``.  Pulling it back through ``tau -> +-24 e^{2 pi i tau}`` gives the
graphs ``L_+-``; the zero locus ``S_delta`` of a Miller form with ``m/l = delta``
is the pull-back of ``S`` through ``tau -> 24/((1 - delta) j(tau))``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.optimize import linear_sum_assignment

from .miller import decompose_weight, faber_poly
from .roots import complex_roots, invert_j, zeros_of_miller

__all__ = [
    "PlaneCurve",
    "CutoffSet",
    "lambert_w",
    "u_inverse",
    "u_inverse_np",
    "log_szego_point",
    "szego_curve",
    "log_szego_curve",
    "s_delta_curve",
    "c_delta_hull",
    "conj_transition_angle",
    "cutoffs",
    "trunc_exp_poly",
    "trunc_exp_roots",
    "hausdorff",
    "szego_distance",
    "miller_szego_distance",
    "ostrowski_comparison",
    "EXACT_SWITCH",
]

# beyond |log|1 - delta|| = 8 only the shifted-graph construction is used
EXACT_SWITCH = 8.0
W_INV_E = 0.2784645427610738  # W(1/e)


# ---------------------------------------------------------------------------
# scalar functions


def lambert_w(x, prec: int = 53):
    """Principal branch of Lambert W with a residual check at ``prec`` bits."""
    with mpmath.workprec(prec + 20):
        x = mpmath.mpf(x)
        if x < -mpmath.exp(-1):
            raise ValueError("lambert_w: x < -1/e is outside the principal branch")
        w = mpmath.re(mpmath.lambertw(x))
        # two Halley steps at the raised precision
        for _ in range(2):
            ew = mpmath.exp(w)
            f = w * ew - x
            if f == 0 or w == -1:
                break
            w = w - f / (ew * (w + 1) - (w + 2) * f / (2 * w + 2))
        res = abs(w * mpmath.exp(w) - x)
        if res > mpmath.mpf(2) ** (-prec + 4) * max(1, abs(x)) and abs(w + 1) > mpmath.mpf(2) ** (-prec // 2):
            raise ArithmeticError(f"lambert_w residual {res} too large")
    with mpmath.workprec(prec):
        return +w


def _one_minus_u(s):
    """``1 - u(e^{-s})`` written so that it stays accurate near ``s = 0``."""
    return s * mpmath.exp(s) - mpmath.expm1(s)


def u_inverse(y, prec: int = 53):
    """The ``x`` in ``[W(1/e), 1]`` with ``(1 + ln x)/x = y``.

    ``u`` is flat at ``x = 1``, so the bisection runs in ``s = -ln x`` on
    ``1 - u = s e^s - (e^s - 1)``, which keeps full accuracy near ``y = 1``.
    """
    with mpmath.workprec(prec + 10):
        y = mpmath.mpf(y)
        if y < -1 or y > 1:
            raise ValueError("u_inverse: y must lie in [-1, 1]")
        w = lambert_w(mpmath.exp(-1), prec + 10)
        if y == 1:
            return mpmath.mpf(1)
        if y == -1:
            return +w
        target = 1 - y
        lo, hi = mpmath.mpf(0), 1 + w  # -ln W(1/e) = 1 + W(1/e)
        for _ in range(prec + 8):
            mid = (lo + hi) / 2
            if _one_minus_u(mid) < target:
                lo = mid
            else:
                hi = mid
        out = mpmath.exp(-(lo + hi) / 2)
    with mpmath.workprec(prec):
        return +out


def u_inverse_np(y) -> np.ndarray:
    """Vectorised double-precision version of :func:`u_inverse`."""
    y = np.clip(np.asarray(y, dtype=float), -1.0, 1.0)
    target = 1.0 - y
    lo = np.zeros(y.shape)
    hi = np.full(y.shape, 1.0 + W_INV_E)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = mid * np.exp(mid) - np.expm1(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return np.where(y == 1.0, 1.0, np.exp(-0.5 * (lo + hi)))


def log_szego_point(x, sign: int = 1, prec: int = 53):
    """``x + i g_sign(x)`` with ``g_+-(x) = (ln 24 - ln u^{-1}(+-cos 2 pi x))/2 pi``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    with mpmath.workprec(prec):
        x = mpmath.mpf(x)
        if abs(x) > 0.5:
            raise ValueError("x must lie in [-1/2, 1/2]")
        r = u_inverse(sign * mpmath.cospi(2 * x), prec)
        return mpmath.mpc(x, (mpmath.log(24) - mpmath.log(r)) / (2 * mpmath.pi))


# ---------------------------------------------------------------------------
# curves


@dataclass
class PlaneCurve:
    samples: np.ndarray  # complex, in order
    param: str  # "angle-x" or "arclength"
    meta: dict = field(default_factory=dict)

    @property
    def xs(self) -> np.ndarray:
        return self.samples.real

    @property
    def ys(self) -> np.ndarray:
        return self.samples.imag

    @property
    def max_spacing(self) -> float:
        return float(np.max(np.abs(np.diff(self.samples)))) if len(self.samples) > 1 else 0.0

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for key in sorted(self.meta):
                fh.write(f"# {key}: {self.meta[key]}\n")
            w = csv.writer(fh)
            w.writerow(["x", "y"])
            for z in self.samples:
                w.writerow([repr(float(z.real)), repr(float(z.imag))])


def _refine(f, ts: np.ndarray, cap: float, max_rounds: int = 12) -> tuple[np.ndarray, np.ndarray]:
    """Insert parameter midpoints until consecutive points are within ``cap``."""
    pts = f(ts)
    for _ in range(max_rounds):
        gaps = np.abs(np.diff(pts))
        bad = np.flatnonzero(gaps > cap)
        if not bad.size:
            break
        mids = 0.5 * (ts[bad] + ts[bad + 1])
        ts = np.sort(np.concatenate([ts, mids]))
        pts = f(ts)
    return ts, pts


def szego_curve(nsamples: int = 2000) -> PlaneCurve:
    """The closed curve ``S`` sampled by polar angle from -pi to pi."""
    if nsamples < 2:
        raise ValueError("nsamples must be at least 2")
    cap = 2 * math.pi / nsamples

    def f(phi):
        return u_inverse_np(np.cos(phi)) * np.exp(1j * phi)

    phis, pts = _refine(f, np.linspace(-math.pi, math.pi, nsamples + 1), cap)
    return PlaneCurve(pts, "arclength", {"curve": "S", "resolution": cap, "nsamples": len(pts)})


def _graph(sign: int, shift: float, nsamples: int) -> tuple[np.ndarray, np.ndarray]:
    cap = 1.0 / nsamples
    ln24 = math.log(24)

    def f(x):
        r = u_inverse_np(sign * np.cos(2 * np.pi * x))
        return x + 1j * ((ln24 - np.log(r)) / (2 * np.pi) + shift)

    return _refine(f, np.linspace(-0.5, 0.5, nsamples + 1), cap)


def log_szego_curve(sign: int = 1, nsamples: int = 1000) -> PlaneCurve:
    """Graph of ``g_sign`` over ``[-1/2, 1/2]``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _, pts = _graph(sign, 0.0, nsamples)
    return PlaneCurve(pts, "angle-x", {"curve": f"L{'+' if sign > 0 else '-'}", "resolution": 1.0 / nsamples})


def s_delta_curve(delta: float, nsamples: int = 400, prec: int = 53, construction: str = "auto") -> PlaneCurve:
    """Zero locus ``S_delta`` for ``delta = m/l``.

    ``construction="asymptotic"`` shifts ``L_+-`` (sign of ``1 - delta``) up by
    ``-log|1 - delta|/2pi``; ``"exact"`` inverts ``j`` at ``24/((1 - delta) z)``
    for ``z`` on ``S``; ``"auto"`` picks asymptotic when ``|log|1-delta|| > 8``
    and exact otherwise.
    """
    if delta == 1:
        raise ValueError("delta = 1 is singular")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if nsamples < 2:
        raise ValueError("nsamples must be at least 2")
    sign = 1 if delta < 1 else -1
    shift = -math.log(abs(1 - delta)) / (2 * math.pi)
    if construction == "auto":
        construction = "asymptotic" if abs(math.log(abs(1 - delta))) > EXACT_SWITCH else "exact"
    meta = {"curve": "S_delta", "delta": delta, "sign": sign, "construction": construction,
            "resolution": 1.0 / nsamples}
    if construction == "asymptotic":
        _, pts = _graph(sign, shift, nsamples)
        return PlaneCurve(pts, "angle-x", meta)
    if construction != "exact":
        raise ValueError(f"unknown construction {construction!r}")
    xs = np.linspace(-0.5, 0.5, nsamples + 1)
    out = []
    with mpmath.workprec(prec):
        for x in xs:
            # point of S whose pull-back lies over x: +-24 q / |1 - delta| = z
            r = u_inverse(sign * mpmath.cospi(2 * mpmath.mpf(x)), prec)
            z = sign * r * mpmath.expj(2 * mpmath.pi * x)
            jv = 24 / ((1 - mpmath.mpf(delta)) * z)
            tau = invert_j(jv, tol=mpmath.mpf(2) ** (-prec + 8), prec=prec)
            t = complex(tau)
            t = complex(t.real + round(x - t.real), t.imag)
            out.append(t)
    return PlaneCurve(np.array(out), "angle-x", meta)


def c_delta_hull(delta: float, nsamples: int = 400, prec: int = 53, construction: str = "asymptotic") -> PlaneCurve:
    """Pointwise maximum of Im over the unit-circle arc and ``S_delta`` on a shared x-grid."""
    s = s_delta_curve(delta, nsamples, prec, construction)
    xs = np.linspace(-0.5, 0.5, nsamples + 1)
    order = np.argsort(s.xs)
    sy = np.interp(xs, s.xs[order], s.ys[order])
    ay = np.sqrt(1 - xs**2)
    hy = np.maximum(ay, sy)
    meta = dict(s.meta)
    meta.update({"curve": "C_delta", "hull": "pointwise max of Im over the arc and S_delta",
                 "on_arc": int(np.sum(ay >= sy))})
    return PlaneCurve(xs + 1j * hy, "angle-x", meta)


def conj_transition_angle(delta: float) -> float | None:
    """Angle ``T`` in ``[pi/2, 2pi/3]`` where ``S_delta`` meets the arc, ``x = -cos T``.

    Solves ``g_+(x) = sqrt(1 - x^2) + log(1 - delta)/2pi`` on ``[0, 1/2]``;
    ``None`` when there is no crossing.
    """
    if not 0 < delta < 1:
        raise ValueError("defined for 0 < delta < 1")
    shift = -math.log(1 - delta) / (2 * math.pi)
    ln24 = math.log(24)

    def h(x):
        r = float(u_inverse_np(np.cos(2 * np.pi * x)))
        return (ln24 - math.log(r)) / (2 * math.pi) + shift - math.sqrt(1 - x * x)

    lo, hi = 0.0, 0.5
    if h(lo) * h(hi) > 0:
        return None
    for _ in range(80):
        mid = (lo + hi) / 2
        if h(lo) * h(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return math.acos(-(lo + hi) / 2)


@dataclass(frozen=True)
class CutoffSet:
    delta_A_plus: object
    delta_A_minus: object
    delta_S_plus: object
    delta_S_minus: object

    def as_dict(self) -> dict:
        return {k: float(v) for k, v in self.__dict__.items()}


def cutoffs(prec: int = 53) -> CutoffSet:
    """The four delta values at which the conjectural zero locus changes shape."""
    with mpmath.workprec(prec + 10):
        w = lambert_w(mpmath.exp(-1), prec + 10)
        a = mpmath.exp(mpmath.sqrt(3) * mpmath.pi)
        b = mpmath.exp(2 * mpmath.pi)
        vals = (1 - 24 / (w * a), 1 + 24 / (w * b), 1 - 24 / b, 1 + 24 / a)
    with mpmath.workprec(prec):
        return CutoffSet(*(+v for v in vals))


# ---------------------------------------------------------------------------
# truncated exponential and distances


def trunc_exp_poly(D: int) -> list[int]:
    """Descending integer coefficients of ``D! E_D(x) = sum_k D!/k! x^(D-k)``."""
    if D < 1:
        raise ValueError("D must be at least 1")
    fact = math.factorial(D)
    return [fact // math.factorial(k) for k in range(D + 1)]


def trunc_exp_roots(D: int, tol: float = 1e-30) -> list[complex]:
    """Certified roots of ``E_D(x) = sum_{k<=D} x^(D-k)/k!`` (centres, as Python complex)."""
    return [complex(d.center) for d in complex_roots(trunc_exp_poly(D), tol=tol)]


def _seg_dist(p: complex, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    L = np.abs(ab) ** 2
    t = np.where(L > 0, ((p - a) * np.conj(ab)).real / np.where(L > 0, L, 1), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return float(np.min(np.abs(a + t * ab - p)))


def hausdorff(points, curve: PlaneCurve) -> float:
    """``max_p min_{s in curve} |p - s|`` with the curve taken as its sampled polyline.

    The polyline differs from the true curve by at most the curve's sampling
    resolution (recorded in ``curve.meta``).
    """
    pts = [complex(p) for p in points]
    if not pts or len(curve.samples) == 0:
        raise ValueError("hausdorff needs nonempty inputs")
    s = np.asarray(curve.samples, dtype=complex)
    if len(s) == 1:
        return max(abs(p - s[0]) for p in pts)
    a, b = s[:-1], s[1:]
    return max(_seg_dist(p, a, b) for p in pts)


def szego_distance(D: int, curve: PlaneCurve | None = None) -> float:
    """Distance of the rescaled truncated-exponential zeros ``1/(D x)`` from ``S``."""
    curve = curve or szego_curve()
    return hausdorff([1 / (D * x) for x in trunc_exp_roots(D)], curve)


def miller_szego_distance(k: int, m: int, curve: PlaneCurve | None = None, tol: float = 1e-20) -> float:
    """Distance of the zeros of ``g_{k,m}`` in the fundamental domain from ``S_{m/l}``."""
    zs = zeros_of_miller(k, m, tol=tol)
    ell = decompose_weight(k).ell
    curve = curve or s_delta_curve(m / ell, construction="asymptotic")
    return hausdorff([complex(z.tau) for z in zs.zeros], curve)


def ostrowski_comparison(k: int, D: int) -> float:
    """Largest matched distance between the zeros of ``E_D`` and of ``P(2k x)/(2k)^D``."""
    w = decompose_weight(k)
    P = faber_poly(k, w.ell - D)
    pf = [complex(d.center) / (2 * k) for d in complex_roots(P.coeffs, tol=1e-30)]
    ef = trunc_exp_roots(D)
    cost = np.abs(np.subtract.outer(np.array(pf), np.array(ef)))
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())
