import math

import pytest
from hypothesis import given, settings, strategies as st

from millerzeros.qseries import (
    LaurentSeries, c_coeff, c_table, d_coeff, d_series, eisenstein_coeffs, inv_trunc,
    mul_trunc, read_series, series_basic, series_mul_div, series_pow, write_series,
)


def naive_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def sigma(p, n):
    return sum(d**p for d in range(1, n + 1) if n % d == 0)


def delta_by_product(order):
    # q * prod (1 - q^n)^24, multiplied out factor by factor
    c = [1] + [0] * (order - 2)
    for n in range(1, order - 1):
        for _ in range(24):
            for i in range(order - 2, n - 1, -1):
                c[i] -= c[i - n]
    return [0] + c


ints = st.integers(min_value=-(10**30), max_value=10**30)


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=1, max_size=40), st.lists(ints, min_size=1, max_size=40),
       st.integers(1, 50))
def test_mul_trunc_matches_naive(a, b, n):
    assert mul_trunc(a, b, n) == naive_mul(a, b, n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([1, -1]), st.lists(st.integers(-1000, 1000), max_size=30), st.integers(1, 40))
def test_inverse_round_trip(u, tail, n):
    a = [u] + tail
    b = inv_trunc(a, n)
    assert mul_trunc(a, b, n) == [1] + [0] * (n - 1)


def test_inverse_needs_unit():
    with pytest.raises(ArithmeticError):
        inv_trunc([2, 1], 5)


def test_named_series_examples():
    e4 = series_basic("E4", 3)
    assert (e4.lead, e4.coeffs) == (0, (1, 240, 2160))
    d = series_basic("Delta", 5)
    assert (d.lead, d.coeffs) == (1, (1, -24, 252, -1472))
    j = series_basic("j", 2)
    assert (j.lead, j.coeffs) == (-1, (1, 744, 196884))
    inv = series_basic("InvE(0)", 4)
    assert inv.coeffs[:1] == (1,) and not any(inv.coeffs[1:])


def test_delta_two_ways():
    N = 60
    prod = delta_by_product(N)
    e4 = series_basic("E4", N)
    e6 = series_basic("E6", N)
    num = e4 * e4 * e4 - e6 * e6
    assert all(c % 1728 == 0 for c in num.coeffs)
    quotient = [c // 1728 for c in num.coeffs]
    d = series_basic("Delta", N)
    assert [d[n] for n in range(N)] == prod
    assert quotient == prod


@pytest.mark.parametrize("k,c", [(4, 240), (6, -504), (8, 480), (10, -264), (14, -24)])
def test_eisenstein_divisor_sums(k, c):
    N = 40
    got = eisenstein_coeffs(k, N)
    assert got == tuple([1] + [c * sigma(k - 1, n) for n in range(1, N)])


def test_eisenstein_products_agree():
    N = 30
    e4, e6 = series_basic("E4", N), series_basic("E6", N)
    assert (e4 * e4).coeffs == eisenstein_coeffs(8, N)
    assert (e4 * e6).coeffs == eisenstein_coeffs(10, N)
    assert (e4 * e4 * e6).coeffs == eisenstein_coeffs(14, N)


def test_identities():
    N = 30
    d = series_basic("Delta", N)
    inv = series_basic("InvDelta", N - 2)
    prod = series_mul_div(d, inv, "mul")
    assert prod.valuation == 0 and prod[0] == 1 and not any(prod[n] for n in range(1, prod.order))
    j = series_basic("j", N)
    e4 = series_basic("E4", N)
    jd = series_mul_div(j, d, "mul")
    e43 = e4 * e4 * e4
    assert all(jd[n] == e43[n] for n in range(min(jd.order, e43.order)))
    a = d.shift(-1)
    back = series_mul_div(a, series_mul_div(LaurentSeries.one(N - 1), a, "div"), "mul")
    assert back[0] == 1 and not any(back[n] for n in range(1, back.order))


def test_pow_examples():
    d = series_basic("Delta", 10)
    one = series_pow(d, 0)
    assert one[0] == 1 and not any(one[n] for n in range(1, one.order))
    j = series_basic("j", 10)
    assert series_pow(j, 2)[-2] == 1
    inv = series_pow(d.shift(-1), -1)
    assert inv[1] == 24


@pytest.mark.parametrize("ell", [1, 3, 7])
def test_pow_round_trip(ell):
    d = series_basic("Delta", 40)
    prod = series_mul_div(series_pow(d, ell), series_pow(d, -ell), "mul")
    assert prod[0] == 1 and not any(prod[n] for n in range(1, prod.order))


def test_c_examples():
    assert c_coeff(1, -1) == 1
    assert c_coeff(1, 1) == 196884
    assert c_coeff(2, -1) == 1488
    assert c_table(4, 10).values[-4] == 1


def test_c_convolution_oracle():
    j1 = {n: c_coeff(1, n) for n in range(-1, 40)}
    prev = dict(j1)
    for r in range(2, 7):
        for n in range(-r, 30):
            conv = sum(prev[a] * j1[n - a] for a in range(-(r - 1), n + 2) if (n - a) in j1 and a in prev)
            assert c_coeff(r, n) == conv
        prev = {n: c_coeff(r, n) for n in range(-r, 40)}


def test_c_upper_bound():
    for r in range(1, 31):
        for n in range(-r, 31):
            c = c_coeff(r, n)
            assert c >= 0
            if c:
                assert math.log(c) <= 2 * math.pi * n + r * math.log(1728) + 1e-9


def test_c_sharper_bound():
    cc = math.exp(2 * math.pi) / 1728
    checked = 0
    for r in range(2, 31):
        for n in range(-r + 1, math.floor(-r * cc) + 1):
            c = c_coeff(r, n)
            if not c:
                continue
            m = -n
            log_rhs = ((r + n) * math.log(1728 - math.exp(2 * math.pi)) - n * math.log(m)
                       + r * math.log(r) - (r + n) * math.log(r + n))
            assert math.log(c) <= log_rhs + 1e-9, (r, n)
            checked += 1
    assert checked > 100


def test_d_examples():
    assert d_coeff(5, 0, 0) == 1
    assert d_coeff(1, 0, 1) == 24
    k = 1200
    ratio = d_coeff(100, 0, 3) * 6 / (2 * k) ** 3
    assert abs(ratio - 1) < 0.05


@pytest.mark.parametrize("kp", [0, 4, 6, 8, 10, 14])
@pytest.mark.parametrize("ell", [-3, 1, 2, 9])
def test_d_closed_forms(ell, kp):
    # two-term expansions of (1 + a1 q + a2 q^2)^-l and 1/E_k' multiplied by hand
    a1, a2 = -24, 252
    A1 = -ell * a1
    A2 = ell * (ell + 1) // 2 * a1 * a1 - ell * a2
    c = {0: 0, 4: 240, 6: -504, 8: 480, 10: -264, 14: -24}[kp]
    e1, e2 = c, c * sigma(kp - 1, 2) if kp else 0
    B1, B2 = -e1, e1 * e1 - e2
    want = (1, A1 + B1, A2 + A1 * B1 + B2)
    assert d_series(ell, kp, 3) == want


def test_series_file_round_trip(tmp_path):
    s = series_basic("j", 25)
    path = tmp_path / "j.txt"
    write_series(path, "j", s)
    name, back = read_series(path)
    assert name == "j" and back == s


def test_bad_arguments():
    with pytest.raises(ValueError):
        series_basic("E12", 5)
    with pytest.raises(ValueError):
        series_basic("InvE(2)", 5)
