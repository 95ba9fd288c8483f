"""Threshold scans over m: where arc membership of the zeros breaks down.

For a weight ``k`` the scan finds the smallest ``m`` from which on not all
zeros lie on the arc, and the smallest ``m`` from which on none do.  Both are
located by bisection on exact root counts, after which the two neighbours of
each boundary are checked explicitly.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .miller import cached_faber, decompose_weight
from .roots import arc_hints, count_arc_roots

__all__ = ["ScanRequest", "ScanRow", "run_scan", "arc_count", "all_on_arc_sweep"]


@dataclass
class ScanRequest:
    ks: list
    m_selector: str = "all"  # "all", "range:a:b" or "delta:lo:hi"
    tolerance: float = 1e-20
    out: str | None = None
    jobs: int = 1
    cache_dir: str | None = None

    def __post_init__(self):
        if not self.ks:
            raise ValueError("empty k selection")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass
class ScanRow:
    k: int
    ell: int
    min_m_not_all_on_arc: int | None
    min_m_no_roots_on_arc: int | None
    verified: bool = True
    errors: list = field(default_factory=list)

    def check(self) -> None:
        a, b = self.min_m_not_all_on_arc, self.min_m_no_roots_on_arc
        if a is not None and b is not None and b < a:
            raise AssertionError(f"row {self.k}: no-roots threshold {b} below not-all threshold {a}")


class _CountCache:
    """Per-weight store of exact arc counts, published atomically."""

    def __init__(self, k: int, cache_dir: str | None):
        self.k = k
        self.path = os.path.join(cache_dir, f"counts_{k}.json") if cache_dir else None
        self.data = {}
        if self.path and os.path.exists(self.path):
            with open(self.path, encoding="utf-8") as fh:
                self.data = {int(m): tuple(v) for m, v in json.load(fh).items()}

    def get(self, m: int, cache_dir: str | None):
        if m not in self.data:
            P = cached_faber(self.k, m, os.path.join(cache_dir, "faber") if cache_dir else None)
            self.data[m] = (count_arc_roots(P, arc_hints(self.k, m)), P.D)
            self._publish()
        return self.data[m]

    def _publish(self):
        if not self.path:
            return
        tmp = f"{self.path}.tmp{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({str(m): list(v) for m, v in sorted(self.data.items())}, fh)
        os.replace(tmp, self.path)


def arc_count(k: int, m: int) -> tuple[int, int]:
    """(zeros of the Faber polynomial in (0, 1728), degree)."""
    return _CountCache(k, None).get(m, None)


def _boundary(pred, lo: int, hi: int):
    """Smallest m in [lo, hi] with pred(m), assuming pred is monotone; None if pred(hi) fails.

    Gallops down from ``hi`` (degrees 1, 2, 4, ...) before bisecting, so the
    expensive high-degree polynomials are only touched when needed.
    """
    if not pred(hi):
        return None
    step = 1
    top = hi
    while True:
        cand = hi - step
        if cand <= lo:
            if pred(lo):
                return lo
            bottom = lo
            break
        if not pred(cand):
            bottom = cand
            break
        top = cand
        step *= 2
    while top - bottom > 1:
        mid = (top + bottom) // 2
        if pred(mid):
            top = mid
        else:
            bottom = mid
    return top


def _scan_one(k: int, cache_dir: str | None, m_lo: int | None = None) -> ScanRow:
    w = decompose_weight(k)
    ell = w.ell
    cache = _CountCache(k, cache_dir)
    errors = []
    if m_lo is None:
        m_lo = 0 if ell > 0 else 2 * ell
    m_hi = ell - 1
    if m_hi < m_lo:
        return ScanRow(k, ell, None, None)

    def not_all(m):
        c, D = cache.get(m, cache_dir)
        return c < D

    def none(m):
        return cache.get(m, cache_dir)[0] == 0

    a = _boundary(not_all, m_lo, m_hi)
    b = _boundary(none, m_lo, m_hi)
    verified = True
    for thr, pred in ((a, not_all), (b, none)):
        if thr is None:
            continue
        if not pred(thr) or (thr > m_lo and pred(thr - 1)):
            verified = False
            errors.append(f"boundary {thr} failed neighbour check")
    row = ScanRow(k, ell, a, b, verified, errors)
    return row


def run_scan(req: ScanRequest) -> list[ScanRow]:
    """Threshold rows for every weight in ``req.ks``, in the given order."""
    ks = [int(k) for k in req.ks]
    if req.jobs > 1:
        with ProcessPoolExecutor(max_workers=req.jobs) as ex:
            rows = list(ex.map(_scan_one, ks, [req.cache_dir] * len(ks)))
    else:
        rows = []
        for k in ks:
            try:
                rows.append(_scan_one(k, req.cache_dir))
            except Exception as exc:  # recorded in the row, the scan goes on
                rows.append(ScanRow(k, decompose_weight(k).ell, None, None, False, [repr(exc)]))
    for r in rows:
        r.check()
    if req.out:
        write_scan(rows, req.out)
    return rows


def write_scan(rows: list[ScanRow], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump([asdict(r) for r in rows], fh, indent=1)
        fh.write("\n")


def all_on_arc_sweep(kmax: int = 1200, ratio: float = 0.55, kmin: int = 12):
    """Check that every zero is on the arc for each even ``k`` and each ``m < ratio * l``.

    Returns ``(number checked, failures)`` with failures as ``(k, m, count, D)``.
    """
    n = 0
    fails = []
    for k in range(kmin, kmax + 1, 2):
        w = decompose_weight(k)
        for m in range(0, w.ell):
            if m >= ratio * w.ell:
                break
            c, D = arc_count(k, m)
            n += 1
            if c != D:
                fails.append((k, m, c, D))
    return n, fails
