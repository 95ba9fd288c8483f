"""Exact truncated Laurent q-expansions with integer coefficients.

Everything here is integer arithmetic.  A :class:`LaurentSeries` knows the
exponent of its first stored coefficient (``lead``) and the exclusive
truncation ``order``; binary operations work out the tightest order that is
still valid instead of trusting a global precision.

The named series (Eisenstein series, ``Delta``, ``j`` and inverses) are built
by :func:`series_basic`.  The two coefficient families used by the Faber
machinery are

* ``c_{r,n}``: coefficient of ``q^n`` in ``j^r`` (:func:`c_coeff`), and
* ``D_{l,d}``: coefficient of ``q^d`` in ``(q^-1 Delta)^-l / E_k'``
  (:func:`d_coeff`, :func:`d_series`).
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Sequence

import gmpy2

__all__ = [
    "ExactnessError",
    "LaurentSeries",
    "CoeffTable",
    "RUDNICK_ALPHA",
    "KPRIMES",
    "series_basic",
    "series_mul_div",
    "series_pow",
    "eta_power",
    "eisenstein_coeffs",
    "c_coeff",
    "c_table",
    "d_coeff",
    "d_series",
    "qj_rows_desc",
    "write_series",
    "read_series",
]

#: Constant ``(25/24)**25`` from the coefficient bounds of Rudnick type.
#: Only used in bounds, never in exact computation.
RUDNICK_ALPHA = Fraction(25, 24) ** 25

KPRIMES = (0, 4, 6, 8, 10, 14)


class ExactnessError(ArithmeticError):
    """An integer-context operation would produce a non-integer result."""


# ---------------------------------------------------------------------------
# coefficient-list kernels


_SCHOOLBOOK_CUTOFF = 12
_GMP_BITS = 40_000


def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if not ai:
            continue
        for j, bj in enumerate(b[: n - i]):
            out[i + j] += ai * bj
    return out


def _pack(coeffs: Sequence[int], wb: int) -> int:
    """Pack signed integers into one integer at byte width ``wb``."""
    pos = b"".join((c if c > 0 else 0).to_bytes(wb, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(wb, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


@functools.lru_cache(maxsize=64)
def _offset(n: int, wb: int) -> int:
    return int.from_bytes((b"\x00" * (wb - 1) + b"\x80") * n, "little")


def _unpack(value: int, n: int, wb: int) -> list[int]:
    nbits = 8 * wb * n
    low = (value & ((1 << nbits) - 1)) + _offset(n, wb)
    raw = (low & ((1 << nbits) - 1)).to_bytes(n * wb, "little")
    half = 1 << (8 * wb - 1)
    return [int.from_bytes(raw[i * wb : (i + 1) * wb], "little") - half for i in range(n)]


def mul_trunc(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two coefficient lists."""
    a = a[:n]
    b = b[:n]
    if not a or not b or n <= 0:
        return [0] * max(n, 0)
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _schoolbook(a, b, n)
    ba = max(abs(x) for x in a).bit_length()
    bb = max(abs(x) for x in b).bit_length()
    if ba == 0 or bb == 0:
        return [0] * n
    bits = ba + bb + min(len(a), len(b)).bit_length() + 2
    wb = (bits + 7) // 8
    pa = _pack(a, wb)
    pb = _pack(b, wb)
    if 8 * wb * min(len(a), len(b)) > _GMP_BITS:
        prod = int(gmpy2.mpz(pa) * gmpy2.mpz(pb))
    else:
        prod = pa * pb
    m = min(n, len(a) + len(b) - 1)
    out = _unpack(prod, m, wb)
    out.extend([0] * (n - m))
    return out


def inv_trunc(a: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of ``1/a`` for a unit constant term."""
    if a[0] not in (1, -1):
        raise ExactnessError("power series inverse needs constant term +-1")
    u = a[0]
    inv = [u]
    prec = 1
    # Newton iteration inv <- inv*(2 - a*inv), exact because a[0] is a unit.
    while prec < n:
        prec = min(2 * prec, n)
        e = mul_trunc(a, inv, prec)
        e = [-x for x in e]
        e[0] += 2
        inv = mul_trunc(inv, e, prec)
    return inv[:n]


def div_trunc(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of ``a/b`` (``b[0] != 0``), checking exactness."""
    b0 = b[0]
    if b0 == 0:
        raise ZeroDivisionError("leading coefficient of divisor is zero")
    if b0 in (1, -1):
        return mul_trunc(a, inv_trunc(b, n), n)
    out: list[int] = []
    for i in range(n):
        s = a[i] if i < len(a) else 0
        for t in range(1, min(i, len(b) - 1) + 1):
            s -= b[t] * out[i - t]
        qt, r = divmod(s, b0)
        if r:
            raise ExactnessError(f"non-integral quotient coefficient at index {i}")
        out.append(qt)
    return out


def pow_trunc(a: Sequence[int], e: int, n: int) -> list[int]:
    """First ``n`` coefficients of ``a**e`` for ``e >= 0`` by binary powering."""
    result = [1] + [0] * (n - 1)
    base = list(a[:n]) + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = mul_trunc(result, base, n)
        e >>= 1
        if e:
            base = mul_trunc(base, base, n)
    return result


# ---------------------------------------------------------------------------
# the series type


@dataclass(frozen=True)
class LaurentSeries:
    """``sum(coeffs[i] * q**(lead + i))  +  O(q**order)``."""

    lead: int
    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self):
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.order - self.lead:
            raise ValueError(
                f"need order - lead == len(coeffs), got {self.order} - {self.lead} != {len(self.coeffs)}"
            )

    @classmethod
    def from_list(cls, lead: int, coeffs: Sequence[int]) -> "LaurentSeries":
        return cls(lead, tuple(int(c) for c in coeffs), lead + len(coeffs))

    @classmethod
    def one(cls, order: int) -> "LaurentSeries":
        if order <= 0:
            raise ValueError("order must be positive")
        return cls(0, (1,) + (0,) * (order - 1), order)

    def __getitem__(self, n: int) -> int:
        if n >= self.order:
            raise IndexError(f"coefficient of q^{n} unknown (order {self.order})")
        if n < self.lead:
            return 0
        return self.coeffs[n - self.lead]

    def __len__(self):
        return len(self.coeffs)

    @property
    def valuation(self) -> int | None:
        """Exponent of the first nonzero known coefficient, or ``None``."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.lead + i
        return None

    def normalized(self) -> "LaurentSeries":
        v = self.valuation
        if v is None or v == self.lead:
            return self
        return LaurentSeries(v, self.coeffs[v - self.lead :], self.order)

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        order = max(order, self.lead)
        return LaurentSeries(self.lead, self.coeffs[: order - self.lead], order)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by ``q**n``."""
        return LaurentSeries(self.lead + n, self.coeffs, self.order + n)

    def scale(self, c: int) -> "LaurentSeries":
        return LaurentSeries(self.lead, tuple(c * x for x in self.coeffs), self.order)

    def relative_precision(self) -> int:
        v = self.valuation
        return self.order - (self.lead if v is None else v)

    # arithmetic ---------------------------------------------------------

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if isinstance(other, int):
            if self.order <= 0:
                return self
            other = LaurentSeries(0, (other,) + (0,) * (self.order - 1), self.order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        lead = min(self.lead, other.lead)
        order = min(self.order, other.order)
        if order <= lead:
            return LaurentSeries(lead, (), lead)
        out = [0] * (order - lead)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.lead + i
                if e >= order:
                    break
                out[e - lead] += c
        return LaurentSeries(lead, tuple(out), order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_mul_div(self, other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_mul_div(self, other, "div")

    def __pow__(self, e: int):
        return series_pow(self, e)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"LaurentSeries(lead={self.lead}, [{shown}{more}], order={self.order})"


@dataclass(frozen=True)
class CoeffTable:
    """A finite slice of one of the two coefficient families.

    ``kind`` is ``"c"`` (params ``(r,)``) or ``"D"`` (params ``(l, kprime)``).
    """

    kind: str
    params: tuple[int, ...]
    values: dict


def series_mul_div(a: LaurentSeries, b: LaurentSeries, op: str) -> LaurentSeries:
    """Exact product (``op="mul"``) or quotient (``op="div"``) of two series."""
    if op not in ("mul", "div"):
        raise ValueError(f"unknown op {op!r}")
    va, vb = a.valuation, b.valuation
    if op == "div" and vb is None:
        raise ZeroDivisionError("divisor is zero to its known order")
    if va is None:
        if op == "mul":
            vb_ = b.lead if vb is None else vb
            lead = a.lead + vb_
            order = a.order + vb_
        else:
            lead = a.lead - vb
            order = a.order - vb
        return LaurentSeries(lead, (0,) * (order - lead), order)
    a = a.normalized()
    if op == "mul":
        if vb is None:
            lead = va + b.lead
            order = va + b.order
            return LaurentSeries(lead, (0,) * (order - lead), order)
        b = b.normalized()
        n = min(a.order - va, b.order - vb)
        return LaurentSeries(va + vb, tuple(mul_trunc(a.coeffs, b.coeffs, n)), va + vb + n)
    b = b.normalized()
    n = min(a.order - va, b.order - vb)
    return LaurentSeries(va - vb, tuple(div_trunc(a.coeffs, b.coeffs, n)), va - vb + n)


def series_pow(a: LaurentSeries, e: int, order: int | None = None) -> LaurentSeries:
    """``a**e`` by binary exponentiation, optionally truncated at ``order``.

    Negative ``e`` requires a leading coefficient of ``+-1``.
    """
    v = a.valuation
    if e == 0:
        n = order if order is not None else max(a.relative_precision(), 1)
        return LaurentSeries.one(n) if n > 0 else LaurentSeries(0, (), 0)
    if v is None:
        raise ExactnessError("cannot raise a series with no known nonzero term to a power")
    a = a.normalized()
    n = a.order - v
    lead = v * e
    if order is not None:
        n = min(n, order - lead)
        if n <= 0:
            return LaurentSeries(order, (), order)
    coeffs = list(a.coeffs[:n])
    if e < 0:
        if coeffs[0] not in (1, -1):
            raise ExactnessError("negative power of a series with non-unit leading coefficient")
        coeffs = inv_trunc(coeffs, n)
        e = -e
    return LaurentSeries(lead, tuple(pow_trunc(coeffs, e, n)), lead + n)


# ---------------------------------------------------------------------------
# named series


@functools.lru_cache(maxsize=None)
def _divisor_sums(power: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for d in range(1, n):
        dp = d**power
        for mult in range(d, n, d):
            out[mult] += dp
    return tuple(out)


def eisenstein_factor(k: int) -> int:
    """Integer ``-2k/B_k`` for the weights used here."""
    from mpmath import bernfrac

    num, den = bernfrac(k)
    f = Fraction(-2 * k) / Fraction(int(num), int(den))
    if f.denominator != 1:
        raise ValueError(f"-2k/B_k is not an integer for k={k}")
    return int(f)


@functools.lru_cache(maxsize=64)
def eisenstein_coeffs(k: int, order: int) -> tuple[int, ...]:
    """Coefficients of ``E_k`` (constant term 1) from divisor sums."""
    if k == 0:
        return (1,) + (0,) * (order - 1)
    if k < 4 or k % 2:
        raise ValueError(f"unsupported Eisenstein weight {k}")
    c = eisenstein_factor(k)
    sig = _divisor_sums(k - 1, order)
    return (1,) + tuple(c * s for s in sig[1:])


@functools.lru_cache(maxsize=256)
def eta_power(e: int, order: int) -> tuple[int, ...]:
    """Coefficients of ``prod_{n>=1} (1 - q^n)**e`` up to ``q**(order-1)``.

    Uses the logarithmic-derivative recurrence
    ``n g_n = -e * sum_{i=1..n} sigma(i) g_{n-i}``, which is exact for
    any integer ``e`` (including huge ones).
    """
    sig = _divisor_sums(1, order)
    g = [1] + [0] * (order - 1)
    for n in range(1, order):
        s = 0
        for i in range(1, n + 1):
            s += sig[i] * g[n - i]
        num = -e * s
        qt, r = divmod(num, n)
        if r:
            raise ExactnessError("eta power recurrence produced a non-integer")
        g[n] = qt
    return tuple(g)


_SERIES_NAMES = ("E4", "E6", "E8", "E10", "E14", "Delta", "j", "InvDelta")


def series_basic(name: str, order: int) -> LaurentSeries:
    """Exact expansion of a named series up to (excluding) ``q**order``.

    ``name`` is one of ``E4 E6 E8 E10 E14 Delta j InvDelta`` or
    ``InvE(k')`` / ``InvE0``... with ``k'`` in ``{0,4,6,8,10,14}``.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    name = name.strip()
    if name.startswith("InvE"):
        kp = int(name[4:].strip("()") or -1)
        if kp not in KPRIMES:
            raise ValueError(f"unsupported k' = {kp}")
        return LaurentSeries(0, tuple(inv_e_coeffs(kp, order)), order)
    if name in ("E4", "E6", "E8", "E10", "E14"):
        return LaurentSeries(0, eisenstein_coeffs(int(name[1:]), order), order)
    if name == "Delta":
        return LaurentSeries(1, eta_power(24, order - 1), order)
    if name == "InvDelta":
        return LaurentSeries(-1, eta_power(-24, order + 1), order)
    if name == "j":
        return LaurentSeries(-1, tuple(qj_coeffs(order + 1)), order)
    raise ValueError(f"unknown series {name!r}")


@functools.lru_cache(maxsize=32)
def inv_e_coeffs(kp: int, order: int) -> tuple[int, ...]:
    if kp not in KPRIMES:
        raise ValueError(f"unsupported k' = {kp}")
    return tuple(inv_trunc(eisenstein_coeffs(kp, order), order))


@functools.lru_cache(maxsize=32)
def qj_coeffs(n: int) -> tuple[int, ...]:
    """First ``n`` coefficients of ``q*j = E4^3 / prod(1-q^m)^24``."""
    e4 = eisenstein_coeffs(4, n)
    e4cube = mul_trunc(mul_trunc(e4, e4, n), e4, n)
    return tuple(mul_trunc(e4cube, eta_power(-24, n), n))


# ---------------------------------------------------------------------------
# coefficient families


@functools.lru_cache(maxsize=512)
def _j_power(r: int, n: int) -> tuple[int, ...]:
    return tuple(pow_trunc(qj_coeffs(n), r, n))


def c_coeff(r: int, n: int) -> int:
    """Coefficient ``c_{r,n}`` of ``q^n`` in ``j^r``."""
    if r < 1:
        raise ValueError("r must be positive")
    if n < -r:
        raise ValueError(f"c_(r,n) is only defined for n >= -r, got n={n}, r={r}")
    return _j_power(r, n + r + 1)[n + r]


def c_table(r: int, nmax: int) -> CoeffTable:
    row = _j_power(r, nmax + r + 1)
    return CoeffTable("c", (r,), {n: row[n + r] for n in range(-r, nmax + 1)})


@functools.lru_cache(maxsize=64)
def d_series(ell: int, kp: int, order: int) -> tuple[int, ...]:
    """``D_{l,0..order-1}``: coefficients of ``(q^-1 Delta)^-l / E_k'``."""
    if kp not in KPRIMES:
        raise ValueError(f"unsupported k' = {kp}")
    h = eta_power(-24 * ell, order)
    if kp == 0:
        return h
    return tuple(mul_trunc(h, inv_e_coeffs(kp, order), order))


def d_coeff(ell: int, kp: int, d: int) -> int:
    if d < 0:
        raise ValueError("d must be nonnegative")
    return d_series(ell, kp, d + 1)[d]


# ---------------------------------------------------------------------------
# rows of (q j)^s


_TRIANGLE_CAP = 400
_triangle: list[tuple[int, ...]] = [(1,)]


def _descending_rows(top: int):
    """Yield ``(s, row)`` for ``s = top, top-1, ..., 0``; row holds indices ``0..s``.

    The top row is a power; each following row is the previous one divided
    by ``q j`` (multiplication by its inverse), so only one row is live.
    """
    n = top + 1
    row = list(pow_trunc(qj_coeffs(n), top, n))
    inv = inv_trunc(qj_coeffs(n), n)
    for s in range(top, -1, -1):
        yield s, row[: s + 1]
        if s:
            row = mul_trunc(row, inv, s)


def _grow_triangle(cap: int) -> None:
    if len(_triangle) > cap:
        return
    rows = dict(_descending_rows(cap))
    _triangle[:] = [tuple(rows[s]) for s in range(cap + 1)]


def qj_rows_desc(D: int):
    """Yield ``row_s`` for ``s = D, D-1, ..., 0`` with ``row_s[t] = c_{s, t-s}``, ``t <= s``.

    Small ``D`` read from a shared cached triangle; large ``D`` stream rows,
    so only one row is alive at a time.
    """
    if D <= _TRIANGLE_CAP:
        if len(_triangle) <= D:
            _grow_triangle(min(_TRIANGLE_CAP, max(D, 2 * (len(_triangle) - 1))))
        for s in range(D, -1, -1):
            yield _triangle[s]
    else:
        for _, row in _descending_rows(D):
            yield row


# ---------------------------------------------------------------------------
# on-disk cache format


def write_series(path: str | os.PathLike, name: str, s: LaurentSeries) -> None:
    """Write ``name order lead`` then one decimal integer per line (atomic)."""
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"{name} {s.order} {s.lead}\n")
        for c in s.coeffs:
            fh.write(f"{c}\n")
    os.replace(tmp, path)


def read_series(path: str | os.PathLike) -> tuple[str, LaurentSeries]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError(f"bad series header in {path}")
        name, order, lead = header[0], int(header[1]), int(header[2])
        coeffs = tuple(int(line) for line in fh if line.strip())
    return name, LaurentSeries(lead, coeffs, order)


def cached_series(name: str, order: int, cache_dir: str | os.PathLike | None = None) -> LaurentSeries:
    """:func:`series_basic`, reading/writing one file per ``(name, order)``."""
    if cache_dir is None:
        return series_basic(name, order)
    fname = os.path.join(cache_dir, f"{name.replace('(', '_').replace(')', '')}_{order}.series")
    if os.path.exists(fname):
        stored, s = read_series(fname)
        if stored == name and s.order == order:
            return s
    s = series_basic(name, order)
    os.makedirs(cache_dir, exist_ok=True)
    write_series(fname, name, s)
    return s


def taylor_shift_one(desc: list[int]) -> list[int]:
    """Coefficients (descending) of ``p(x+1)`` given descending coefficients of ``p``."""
    d = list(desc)
    n = len(d) - 1
    for t in range(n):
        d[: n + 1 - t] = accumulate(d[: n + 1 - t])
    return d
