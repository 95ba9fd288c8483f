"""Bounds that control where the cosine approximation of a Miller form holds.

On an arc ``[alpha, beta]`` of the unit circle, ``e^{ik theta/2 + 2 pi m sin theta} g_{k,m}``
is ``2 cos(k theta/2 + 2 pi m cos theta) + o(1)`` as long as ``delta = m/l`` stays
below ``I(alpha, beta, B)`` (holomorphic forms) or above ``I^w(alpha, beta, B)``
(weakly holomorphic forms).  Splitting ``[pi/2, 2 pi/3]`` into many pieces and
optimising ``B`` on each one gives the threshold functions assembled by
:func:`grid_search`.

Fast scans run in numpy doubles; :func:`certify_table` re-evaluates the chosen
``B`` per interval in interval arithmetic so that the reported bound is on the
safe side (lower bound for ``I``, upper bound for ``I^w``).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import iv

from .miller import decompose_weight, faber_poly
from .modeval import delta_at, eisenstein_at, j_at, log_abs_delta

__all__ = [
    "ResidueSetEntry",
    "IntervalRecord",
    "ArcBoundTable",
    "abs_delta",
    "ln_abs_delta_np",
    "enumerate_R",
    "I_bound",
    "Iw_bound",
    "grid_search",
    "certify_table",
    "predicted_arc_count",
    "cos_approx_error",
    "argmax_abs_delta",
    "WEAK_B_MIN",
    "WEAK_MONOTONE",
    "EPSILON",
]

WEAK_B_MIN = 0.287
EPSILON = 1e-10
# for delta above 3/(pi sin(2pi/3)) the phase k t/2 + 2 pi m cos t is monotone on [pi/2, 2pi/3]
WEAK_MONOTONE = 2 * math.sqrt(3) / math.pi
_NTERMS = 60


# ---------------------------------------------------------------------------
# |Delta|


def abs_delta(point, prec: int = 53):
    """``|Delta|`` at ``("arc", theta)``, ``("vertical", x, B)`` or ``("imag", B)``."""
    kind = point[0]
    with mpmath.workprec(prec):
        if kind == "arc":
            tau = mpmath.expj(mpmath.mpf(point[1]))
        elif kind == "vertical":
            tau = mpmath.mpc(point[1], point[2])
        elif kind == "imag":
            tau = mpmath.mpc(0, point[1])
        else:
            raise ValueError(f"unknown point kind {kind!r}")
        if mpmath.im(tau) <= 0:
            raise ValueError("point must lie in the upper half-plane")
        return mpmath.exp(log_abs_delta(tau, prec))


def ln_abs_delta_np(tau) -> np.ndarray:
    """Vectorised ``ln |Delta(tau)|`` in double precision (``Im tau >= 0.25``)."""
    tau = np.asarray(tau, dtype=complex)
    q = np.exp(2j * np.pi * tau)
    n = np.arange(1, _NTERMS + 1)
    return -2 * np.pi * tau.imag + 24 * np.sum(np.log(np.abs(1 - q[..., None] ** n)), axis=-1)


def _ln_abs_delta_iv(x, y, nterms: int = 40):
    """Interval enclosure of ``ln|Delta(x + iy)|`` including the series tail."""
    x = iv.mpf(x)
    y = iv.mpf(y)
    r = iv.exp(-2 * iv.pi * y)
    s = -2 * iv.pi * y
    rn = iv.mpf(1)
    for n in range(1, nterms + 1):
        rn = rn * r
        s += 12 * iv.log(1 - 2 * rn * iv.cos(2 * iv.pi * n * x) + rn * rn)
    # |ln|1-w|| <= |w|/(1-|w|) for |w| < 1; sum over n > nterms
    rhi = r.b
    rt = rhi ** (nterms + 1)
    tail = 24 * rt / ((1 - rhi) * (1 - rt))
    return s + iv.mpf([-tail, tail])


def argmax_abs_delta(B: float, npts: int = 1001) -> float:
    """x in [-1/2, 1/2] maximising ``|Delta(x + iB)|`` on an ``npts`` grid."""
    xs = np.linspace(-0.5, 0.5, npts)
    v = ln_abs_delta_np(xs + 1j * B)
    return float(xs[int(np.argmax(v))])


# ---------------------------------------------------------------------------
# the residue set


@dataclass(frozen=True)
class ResidueSetEntry:
    """Bottom row ``(c, d)`` of a matrix with ``Im(gamma e^{i theta}) >= B`` somewhere on the arc."""

    c: int
    d: int
    norm_min: float  # min of |c e^{i theta} + d|^2 over [alpha, beta]
    norm_max: float
    im_max: float  # max of Im(gamma e^{i theta}) over [alpha, beta]


def _max_im(c: int, d: int, alpha: float, beta: float) -> float:
    """Exact maximum of ``sin t / (c^2 + d^2 + 2cd cos t)`` on ``[alpha, beta]``."""
    s2 = c * c + d * d
    f = lambda t: math.sin(t) / (s2 + 2 * c * d * math.cos(t))  # noqa: E731
    best = max(f(alpha), f(beta))
    if c != d and s2:
        ct = -2 * c * d / s2
        if -1 <= ct <= 1:
            t = math.acos(ct)
            if alpha <= t <= beta:
                best = max(best, 1 / abs(c * c - d * d))
    return best


def _candidates(B: float):
    cmax = int(math.sqrt(2 / (math.sqrt(3) * B))) + 1
    dmax = cmax + int(1 / math.sqrt(B)) + 2
    for c in range(1, cmax + 1):
        for d in range(-dmax, dmax + 1):
            if (c, d) == (1, 0) or math.gcd(c, d) != 1:
                continue
            yield c, d


def enumerate_R(alpha: float, beta: float, B: float) -> list[ResidueSetEntry]:
    """Coprime ``(c, d)`` other than the identity and ``S`` with ``max Im(gamma e^{i t}) >= B``."""
    if not (math.pi / 2 - 1e-12 <= alpha < beta <= 2 * math.pi / 3 + 1e-12):
        raise ValueError("need pi/2 <= alpha < beta <= 2pi/3")
    if B <= 0:
        raise ValueError("B must be positive")
    out = []
    for c, d in _candidates(B):
        m = _max_im(c, d, alpha, beta)
        if m >= B:
            na = c * c + d * d + 2 * c * d * math.cos(alpha)
            nb = c * c + d * d + 2 * c * d * math.cos(beta)
            out.append(ResidueSetEntry(c, d, min(na, nb), max(na, nb), m))
    return out


def _residue_term(c: int, d: int, alpha: float, beta: float, weak: bool) -> float:
    """Bound contributed by one residue ``(c, d)``."""
    na = c * c + d * d + 2 * c * d * math.cos(alpha)
    nb = c * c + d * d + 2 * c * d * math.cos(beta)
    if weak:
        s = math.sin(beta)
        num, den = (6 * math.log(na), 1 - 1 / nb) if c * d >= 0 else (6 * math.log(nb), 1 - 1 / na)
    else:
        s = math.sin(alpha)
        num, den = (6 * math.log(nb), 1 - 1 / na) if c * d >= 0 else (6 * math.log(na), 1 - 1 / nb)
    # 12 ln|.| = 6 ln|.|^2
    if den <= 0:
        return 0.0 if num <= 0 else math.inf
    return num / (2 * math.pi * s * den)


def I_bound(alpha: float, beta: float, B: float, prec: int = 53, residues: bool = True) -> float:
    """The holomorphic bound ``I(alpha, beta, B)``: minimum of the Delta term and residue terms."""
    if not 0 < B < math.sin(alpha):
        raise ValueError("need 0 < B < sin(alpha)")
    with mpmath.workprec(prec):
        top = log_abs_delta(mpmath.mpc(0, B), prec) - log_abs_delta(mpmath.expj(beta), prec)
        val = float(top / (2 * mpmath.pi * (mpmath.sin(alpha) - B)))
    if residues:
        for e in enumerate_R(alpha, beta, B):
            val = min(val, _residue_term(e.c, e.d, alpha, beta, weak=False))
    return val


def Iw_bound(alpha: float, beta: float, B: float, prec: int = 53, residues: bool = True) -> float:
    """The weak bound ``I^w(alpha, beta, B)``: maximum of the Delta term and residue terms."""
    if B <= WEAK_B_MIN:
        raise ValueError(f"need B > {WEAK_B_MIN}: the maximum of |Delta(x+iB)| is only known to sit at x=1/2 there")
    if not B < math.sin(alpha):
        raise ValueError("need B < sin(alpha)")
    with mpmath.workprec(prec):
        top = log_abs_delta(mpmath.mpc(0.5, B), prec) - log_abs_delta(mpmath.expj(alpha), prec)
        val = float(top / (2 * mpmath.pi * (mpmath.sin(beta) - B)))
    if residues:
        for e in enumerate_R(alpha, beta, B):
            val = max(val, _residue_term(e.c, e.d, alpha, beta, weak=True))
    return val


# ---------------------------------------------------------------------------
# grid search


@dataclass
class IntervalRecord:
    r: int
    alpha: float
    beta: float
    B: float
    delta: float
    delta_cert: float | None = None
    perturbed: bool = False


@dataclass
class ArcBoundTable:
    mode: str
    N: int
    Bstep: float
    records: list
    settings: dict = field(default_factory=dict)

    # -- thresholds ---------------------------------------------------------

    @property
    def deltas(self) -> np.ndarray:
        return np.array([rec.delta for rec in self.records])

    @property
    def delta_cutoff_all(self) -> float:
        """Holomorphic: below this every zero is on the arc.  Weak: above this."""
        d = self.deltas
        return float(d[-1]) if self.mode == "holomorphic" else float(np.max(d))

    @property
    def delta_cutoff_none(self) -> float:
        """Holomorphic: from here on the guaranteed proportion is 0.  Weak: below this."""
        if self.mode == "holomorphic":
            grid = np.linspace(self.delta_cutoff_all, 3 / math.pi, 4001)
            vals = np.array([self.P(x) for x in grid])
            pos = np.flatnonzero(vals > 0)
            if not pos.size:
                return self.delta_cutoff_all
            i = pos[-1]
            # P is decreasing; refine the last positive/zero transition by bisection
            lo, hi = grid[i], grid[min(i + 1, len(grid) - 1)]
            for _ in range(60):
                mid = (lo + hi) / 2
                if self.P(mid) > 0:
                    lo = mid
                else:
                    hi = mid
            return float(hi)
        return max(float(np.min(self.deltas)), WEAK_MONOTONE)

    # -- holomorphic piecewise functions ---------------------------------------

    def _r0(self, delta: float):
        """Largest r with delta < delta_s for every s <= r (None if there is none)."""
        d = self.deltas
        bad = np.flatnonzero(~(delta < d))
        if bad.size == 0:
            return self.N - 1
        first = int(bad[0])
        return first - 1 if first > 0 else None

    def P(self, delta: float) -> float:
        if self.mode != "holomorphic":
            return self.P_minus(delta)
        if delta >= 3 / math.pi:
            return 0.0
        r0 = self._r0(delta)
        if r0 is None:
            return 0.0
        if r0 == self.N - 1:
            return 1.0
        b = self.records[r0].beta
        val = ((6 / math.pi) * b + 2 * delta * math.cos(b) - 3) / (1 - delta) - EPSILON
        # printed as min(0, ...), which is never positive; the max keeps P in [0, 1]
        return min(1.0, max(0.0, val))

    def T(self, delta: float) -> float:
        if self.mode != "holomorphic":
            return self.T_minus(delta)
        if delta >= 3 / math.pi:
            return math.pi / 2
        r0 = self._r0(delta)
        if r0 is None:
            return math.pi / 2
        if r0 == self.N - 1:
            return 2 * math.pi / 3
        return self.records[r0].beta

    def Theta(self, delta: float) -> float:
        """Piecewise-linear angle: 2pi/3 up to the all-cutoff, then a chord down to pi/2."""
        a, b = self.delta_cutoff_all, self.delta_cutoff_none
        if delta < a:
            return 2 * math.pi / 3
        if delta >= b:
            return math.pi / 2
        return 2 * math.pi / 3 - (delta - a) / (b - a) * math.pi / 6

    def chord(self, delta: float) -> float:
        a, b = self.delta_cutoff_all, self.delta_cutoff_none
        return 1 - (delta - a) / (b - a)

    # -- weak piecewise functions ------------------------------------------------

    def _good(self, delta: float) -> np.ndarray:
        """Intervals on which the cosine approximation holds and the phase is monotone."""
        if delta <= WEAK_MONOTONE:
            return np.zeros(self.N, dtype=bool)
        return delta > self.deltas

    def _weak_fraction(self, delta: float, good: np.ndarray) -> float:
        a = np.array([rec.alpha for rec in self.records])[good]
        b = np.array([rec.beta for rec in self.records])[good]
        num = np.sum((6 / math.pi) * (b - a) + 2 * delta * (np.cos(b) - np.cos(a)))
        return float(num / (1 - delta))

    def P_minus(self, delta: float) -> float:
        """Guaranteed proportion of zeros on the good intervals, constant between breakpoints."""
        good = self._good(delta)
        if not good.any():
            return 0.0
        if good.all():
            return 1.0
        bps = self._weak_breakpoints()
        i = int(np.searchsorted(bps, delta, side="left"))
        lo = bps[i - 1]
        hi = bps[i] if i < len(bps) else math.inf
        # the fraction is a Moebius function of delta, so its minimum sits at an end
        vals = [self._weak_fraction(x, good) for x in (lo, hi) if math.isfinite(x)]
        return min(1.0, max(0.0, min(vals) - EPSILON))

    def _weak_breakpoints(self) -> np.ndarray:
        d = self.deltas
        return np.unique(np.concatenate([d[d > WEAK_MONOTONE], [WEAK_MONOTONE]]))

    def T_minus(self, delta: float) -> float:
        """Left end of the longest run of good intervals ending at rho."""
        good = self._good(delta)
        if not good[-1]:
            return 2 * math.pi / 3
        bad = np.flatnonzero(~good)
        return self.records[int(bad[-1]) + 1].alpha if bad.size else math.pi / 2

    # -- export -------------------------------------------------------------

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "alpha", "beta", "B", "delta", "delta_cert"])
            for rec in self.records:
                w.writerow([rec.r, repr(rec.alpha), repr(rec.beta), repr(rec.B), repr(rec.delta),
                            "" if rec.delta_cert is None else repr(rec.delta_cert)])

    def piecewise(self) -> dict:
        """JSON-ready descriptors of the threshold functions."""
        d = self.deltas
        if self.mode == "holomorphic":
            pieces = {
                "P": {
                    "formula": "max(0, ((6/pi) beta_r + 2 delta cos beta_r - 3)/(1 - delta) - eps)",
                    "convention": "max(0, ...) (the printed min(0, ...) is never positive)",
                    "breakpoints": [float(x) for x in d[::-1]],
                    "beta": [rec.beta for rec in self.records[::-1]],
                    "eps": EPSILON,
                },
                "T": {"breakpoints": [float(x) for x in d[::-1]], "values": [rec.beta for rec in self.records[::-1]]},
                "Theta": {"breakpoints": [self.delta_cutoff_all, self.delta_cutoff_none],
                          "values": [2 * math.pi / 3, math.pi / 2]},
            }
        else:
            pieces = {
                "P_minus": {"samples": [[x, self.P_minus(x)] for x in np.linspace(1.0, 1.2, 81)]},
                "T_minus": {"samples": [[x, self.T_minus(x)] for x in np.linspace(1.0, 1.2, 81)]},
            }
        return {
            "mode": self.mode,
            "N": self.N,
            "Bstep": self.Bstep,
            "settings": self.settings,
            "delta_cutoff_all": self.delta_cutoff_all,
            "delta_cutoff_none": self.delta_cutoff_none,
            "functions": pieces,
        }

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.piecewise(), fh, indent=1)
            fh.write("\n")


def _intervals(N: int):
    for r in range(N):
        yield r, math.pi / 2 + math.pi * r / (6 * N), math.pi / 2 + math.pi * (r + 1) / (6 * N)


def grid_search(
    mode: str = "holomorphic",
    N: int = 1000,
    Bstep: float = 0.0005,
    prec: int = 53,
    b_lower: str = "half",
    b_upper: str = "sin_alpha",
    residue_terms: bool = False,
    certify: bool = False,
) -> ArcBoundTable:
    """Optimise ``B`` on each of ``N`` equal sub-arcs of ``[pi/2, 2pi/3]``.

    Holomorphic mode maximises ``I`` over ``B = b0, b0 + Bstep, ... < sin alpha_r``
    where ``b0`` is ``1/2`` (``b_lower="half"``) or ``tan(beta_r/2)/2``
    (``b_lower="tan"``, the range on which no residue terms can occur).
    Weak mode minimises ``I^w`` over ``B = 0.287 + Bstep, ...`` below
    ``sin alpha_r`` (``b_upper="sin_alpha"``) or ``sin beta_r`` (``"sin_beta"``).
    ``residue_terms`` adds the contributions of the residue set.
    """
    if mode not in ("holomorphic", "weak"):
        raise ValueError(f"unknown mode {mode!r}")
    if N < 1 or Bstep <= 0:
        raise ValueError("need N >= 1 and Bstep > 0")
    records = []
    weak = mode == "weak"
    if weak:
        base = WEAK_B_MIN
        Bgrid = base + Bstep * np.arange(1, int((1 - base) / Bstep) + 2)
        lnD = ln_abs_delta_np(0.5 + 1j * Bgrid)
    else:
        Bgrid = 0.5 + Bstep * np.arange(0, int(0.5 / Bstep) + 2)
        lnD = ln_abs_delta_np(1j * Bgrid)
    for r, a, b in _intervals(N):
        if weak:
            hi = math.sin(b) if b_upper == "sin_beta" else math.sin(a)
            sel = Bgrid < hi
            Bs, L = Bgrid[sel], lnD[sel]
            vals = (L - ln_abs_delta_np(np.exp(1j * a))) / (2 * np.pi * (math.sin(b) - Bs))
        else:
            if b_lower == "tan":
                b0 = 0.5 * math.tan(b / 2)
                Bs = b0 + Bstep * np.arange(0, int((math.sin(a) - b0) / Bstep) + 2)
                Bs = Bs[Bs < math.sin(a)]
                L = ln_abs_delta_np(1j * Bs)
            else:
                sel = Bgrid < math.sin(a)
                Bs, L = Bgrid[sel], lnD[sel]
            vals = (L - ln_abs_delta_np(np.exp(1j * b))) / (2 * np.pi * (math.sin(a) - Bs))
        perturbed = False
        if residue_terms and len(Bs):
            cands = list(_candidates(float(Bs.min())))
            ims = np.array([_max_im(c, d, a, b) for c, d in cands])
            terms = np.array([_residue_term(c, d, a, b, weak) for c, d in cands])
            # B exactly on a boundary Im(gamma e^{it}) = B: move it up by one ulp
            hit = np.isclose(Bs[:, None], ims[None, :], rtol=0, atol=1e-15).any(axis=1)
            if hit.any():
                Bs = np.where(hit, np.nextafter(Bs, np.inf), Bs)
                perturbed = True
            member = ims[None, :] >= Bs[:, None]
            if weak:
                rt = np.where(member, terms[None, :], -np.inf).max(axis=1)
                vals = np.maximum(vals, rt)
            else:
                rt = np.where(member, terms[None, :], np.inf).min(axis=1)
                vals = np.minimum(vals, rt)
        if len(Bs) == 0:
            records.append(IntervalRecord(r, a, b, math.nan, math.nan if not weak else math.inf))
            continue
        i = int(np.argmin(vals)) if weak else int(np.argmax(vals))
        records.append(IntervalRecord(r, a, b, float(Bs[i]), float(vals[i]), None, perturbed))
    table = ArcBoundTable(
        mode, N, Bstep, records,
        {"b_lower": b_lower if not weak else f"{WEAK_B_MIN} (exclusive)",
         "b_upper": b_upper if weak else "sin_alpha",
         "residue_terms": residue_terms, "eps": EPSILON,
         "P_convention": "max(0, ...)"},
    )
    if certify:
        certify_table(table, prec=max(prec, 64))
    return table


def certify_table(table: ArcBoundTable, prec: int = 64) -> ArcBoundTable:
    """Interval re-evaluation of the Delta term at each chosen ``B``.

    Stores a guaranteed lower bound (holomorphic) or upper bound (weak) of the
    Delta term in ``delta_cert``.
    """
    saved = iv.prec
    iv.prec = prec
    try:
        for rec in table.records:
            if not math.isfinite(rec.B):
                continue
            a, b, B = iv.mpf(rec.alpha), iv.mpf(rec.beta), iv.mpf(rec.B)
            if table.mode == "holomorphic":
                top = _ln_abs_delta_iv(0, B) - _ln_abs_delta_iv(iv.cos(b), iv.sin(b))
                val = top / (2 * iv.pi * (iv.sin(a) - B))
                rec.delta_cert = float(mpmath.mpf(val.a))
            else:
                top = _ln_abs_delta_iv(0.5, B) - _ln_abs_delta_iv(iv.cos(a), iv.sin(a))
                val = top / (2 * iv.pi * (iv.sin(b) - B))
                rec.delta_cert = float(mpmath.mpf(val.b))
    finally:
        iv.prec = saved
    return table


# ---------------------------------------------------------------------------
# counting and the cosine approximation


def _special_angle(x):
    """Exact (theta/pi, cos theta) for pi/2 and 2pi/3, else None."""
    if isinstance(x, tuple) and x[0] == "pi":
        f = Fraction(x[1])
        table = {Fraction(1, 2): Fraction(0), Fraction(2, 3): Fraction(-1, 2)}
        if f in table:
            return f, table[f]
        return None
    xf = float(x)
    if abs(xf - math.pi / 2) < 1e-13:
        return Fraction(1, 2), Fraction(0)
    if abs(xf - 2 * math.pi / 3) < 1e-13:
        return Fraction(2, 3), Fraction(-1, 2)
    return None


def _phase_value(k: int, m: int, theta, prec: int):
    """``k theta/(2pi) + 2 m cos theta`` as an exact Fraction or a high-precision mpf."""
    sp = _special_angle(theta)
    if sp is not None:
        f, c = sp
        return k * f / 2 + 2 * m * c
    with mpmath.workprec(prec):
        t = mpmath.mpf(theta[1]) * mpmath.pi if isinstance(theta, tuple) else mpmath.mpf(theta)
        return k * t / (2 * mpmath.pi) + 2 * m * mpmath.cos(t)


def _floor_ceil(v, up: bool, prec: int):
    if isinstance(v, Fraction):
        return math.ceil(v) if up else math.floor(v)
    n = int(mpmath.nint(v))
    if abs(v - n) < mpmath.mpf(2) ** (-prec // 2):
        raise ArithmeticError("phase value too close to an integer to round safely")
    return int(mpmath.ceil(v)) if up else int(mpmath.floor(v))


def predicted_arc_count(k: int, m: int, alpha, beta, prec: int = 256, require_monotone: bool = False) -> int:
    """``floor(k beta/2pi + 2m cos beta) - ceil(k alpha/2pi + 2m cos alpha)``, clamped at 0.

    ``alpha``/``beta`` may be floats or ``("pi", fraction)``; the endpoints
    pi/2 and 2pi/3 are handled exactly.  With ``require_monotone`` the count
    is refused unless ``m/l <= 3/pi`` (the phase is then monotone on the arc).
    """
    if require_monotone:
        ell = decompose_weight(k).ell
        if ell <= 0 or m / ell > 3 / math.pi:
            raise ValueError("phase monotonicity needs 0 < l and m/l <= 3/pi")
    a = _phase_value(k, m, alpha, prec)
    b = _phase_value(k, m, beta, prec)
    return max(0, _floor_ceil(b, False, prec) - _floor_ceil(a, True, prec))


def _eisenstein_kprime(kp: int, tau, prec: int):
    if kp == 0:
        return mpmath.mpf(1)
    e4 = eisenstein_at(4, tau, prec)
    e6 = eisenstein_at(6, tau, prec)
    return {4: e4, 6: e6, 8: e4**2, 10: e4 * e6, 14: e4**2 * e6}[kp]


def cos_approx_error(k: int, m: int, thetas, prec: int | None = None):
    """``(max |gbar - 2cos(2 pi m cos t + k t/2)|, max |Im gbar|)`` over ``thetas``.

    ``gbar(t) = e^{ikt/2 + 2 pi m sin t} g_{k,m}(e^{it})`` is evaluated as
    ``Delta^l E_k' P(j)`` at a working precision that covers the cancellation in
    ``P(j)``.
    """
    w = decompose_weight(k)
    P = faber_poly(k, m)
    if prec is None:
        big = max(abs(c) for c in P.y).bit_length()
        prec = 80 + big + 11 * P.D
    worst = 0.0
    worst_im = 0.0
    with mpmath.workprec(prec):
        for t in thetas:
            t = mpmath.mpf(t)
            tau = mpmath.expj(t)
            jv = j_at(tau, prec)
            pv = mpmath.mpf(0)
            for c in P.y:
                pv = pv * jv + c
            g = delta_at(tau, prec) ** w.ell * _eisenstein_kprime(w.kprime, tau, prec) * pv
            gbar = mpmath.exp(1j * k * t / 2 + 2 * mpmath.pi * m * mpmath.sin(t)) * g
            target = 2 * mpmath.cos(2 * mpmath.pi * m * mpmath.cos(t) + k * t / 2)
            worst = max(worst, float(abs(mpmath.re(gbar) - target)))
            worst_im = max(worst_im, float(abs(mpmath.im(gbar))))
    return worst, worst_im


def interval_dict(rec: IntervalRecord) -> dict:
    return asdict(rec)
