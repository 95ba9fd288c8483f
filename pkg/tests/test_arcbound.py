import json
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from millerzeros import arcbound as ab

A0, A1 = math.pi / 2, 2 * math.pi / 3


@pytest.fixture(scope="module")
def holo():
    return ab.grid_search("holomorphic", 1000, 0.0005)


@pytest.fixture(scope="module")
def strict():
    return ab.grid_search("holomorphic", 1000, 0.0005, b_lower="tan", residue_terms=True)


def ln_delta_oracle(tau, nterms=200):
    # the product definition, summed term by term
    with mpmath.workprec(120):
        tau = mpmath.mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        s = -2 * mpmath.pi * tau.imag
        qn = mpmath.mpf(1)
        for _ in range(nterms):
            qn *= q
            s += 24 * mpmath.log(abs(1 - qn))
        return s


def R_oracle(alpha, beta, B, cmax=8, dmax=20, npts=4001):
    ts = np.linspace(alpha, beta, npts)
    out, margin = set(), set()
    for c in range(1, cmax + 1):
        for d in range(-dmax, dmax + 1):
            if (c, d) == (1, 0) or math.gcd(c, d) != 1:
                continue
            top = np.max(np.sin(ts) / np.abs(c * np.exp(1j * ts) + d) ** 2)
            if top >= B:
                out.add((c, d))
            if abs(top - B) < 1e-6:
                margin.add((c, d))
    return out, margin


def test_abs_delta_points():
    for pt, tau in [(("arc", 1.8), mpmath.expj(1.8)), (("vertical", 0.3, 0.7), mpmath.mpc(0.3, 0.7)),
                    (("imag", 1.1), mpmath.mpc(0, 1.1))]:
        assert float(mpmath.log(ab.abs_delta(pt, 80))) == pytest.approx(float(ln_delta_oracle(tau)), abs=1e-12)
    B = 5.0
    assert float(ab.abs_delta(("imag", B))) / math.exp(-2 * math.pi * B) == pytest.approx(1, abs=1e-11)


def test_numpy_and_interval_paths():
    taus = [complex(x, y) for x in (-0.5, -0.1, 0.0, 0.37, 0.5) for y in (0.3, 0.6, 0.9, 1.4)]
    got = ab.ln_abs_delta_np(np.array(taus))
    for g, t in zip(got, taus):
        assert g == pytest.approx(float(ln_delta_oracle(t)), abs=1e-11)
        enc = ab._ln_abs_delta_iv(t.real, t.imag)
        assert enc.a <= ln_delta_oracle(t) <= enc.b


@pytest.mark.parametrize("B", [0.3, 0.5, 1.0])
def test_max_on_vertical_edge(B):
    assert abs(ab.argmax_abs_delta(B)) == 0.5


def test_max_leaves_edge_at_0235():
    assert abs(ab.argmax_abs_delta(0.235)) != 0.5


def test_arc_growth_and_vertical_minimum():
    th = np.linspace(A0, A1, 100)
    v = ab.ln_abs_delta_np(np.exp(1j * th))
    assert np.all(np.diff(v) > 0)
    xs = np.linspace(-0.5, 0.5, 1001)
    w = ab.ln_abs_delta_np(xs + 0.5j)
    assert xs[int(np.argmin(w))] == 0


def test_R_examples():
    assert ab.enumerate_R(A0, A1, 0.5 * math.tan(A1 / 2) + 1e-3) == []
    assert ab.enumerate_R(A0, A1, 2.0) == []
    assert (1, 1) in {(e.c, e.d) for e in ab.enumerate_R(1.9, A1, 0.65)}


@settings(max_examples=30, deadline=None)
@given(st.floats(A0, A1 - 0.01), st.floats(0.005, 0.5), st.floats(0.3, 1.2))
def test_R_against_sampling(alpha, width, B):
    beta = min(A1, alpha + width)
    got = {(e.c, e.d) for e in ab.enumerate_R(alpha, beta, B)}
    want, margin = R_oracle(alpha, beta, B)
    assert got - margin == want - margin


@settings(max_examples=30, deadline=None)
@given(st.floats(A0, A1 - 0.02), st.floats(0.01, 0.5), st.floats(0, 1), st.floats(0, 1), st.floats(0.3, 1.2))
def test_R_refinement(alpha, width, s, t, B):
    beta = min(A1, alpha + width)
    a2 = alpha + (beta - alpha) * min(s, t)
    b2 = alpha + (beta - alpha) * max(s, t)
    if b2 <= a2:
        return
    big = {(e.c, e.d) for e in ab.enumerate_R(alpha, beta, B)}
    small = {(e.c, e.d) for e in ab.enumerate_R(a2, b2, B)}
    assert small <= big


def test_R_argument_checks():
    with pytest.raises(ValueError):
        ab.enumerate_R(1.0, 2.0, 0.5)
    with pytest.raises(ValueError):
        ab.enumerate_R(A0, A1, 0.0)


def test_I_collapses_without_residues():
    alpha, beta, B = A0, A1, 0.95
    assert ab.enumerate_R(alpha, beta, B) == []
    want = (ln_delta_oracle(1j * B) - ln_delta_oracle(mpmath.expj(beta))) / (2 * mpmath.pi * (math.sin(alpha) - B))
    assert ab.I_bound(alpha, beta, B) == pytest.approx(float(want), abs=1e-12)


def test_Iw_collapses_without_residues():
    alpha, beta, B = A0, A1, 0.9
    assert ab.enumerate_R(alpha, beta, B) == []
    want = ((ln_delta_oracle(0.5 + 1j * B) - ln_delta_oracle(mpmath.expj(alpha)))
            / (2 * mpmath.pi * (math.sin(beta) - B)))
    assert ab.Iw_bound(alpha, beta, B) == pytest.approx(float(want), abs=1e-12)


def test_Iw_range_checks():
    with pytest.raises(ValueError):
        ab.Iw_bound(A0, A1, 0.287)
    with pytest.raises(ValueError):
        ab.Iw_bound(2.0, A1, 0.95)


def test_I_decreases_towards_rho():
    alpha, B = 1.9, 0.6
    vals = [ab.I_bound(alpha, beta, B) for beta in np.linspace(1.95, A1, 12)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_last_interval_value(holo):
    r = holo.records[-1]
    assert ab.I_bound(r.alpha, r.beta, r.B, residues=False) == pytest.approx(0.6194, abs=5e-4)


def test_holomorphic_cutoffs(holo):
    assert abs(holo.delta_cutoff_all - 0.6194) <= 0.0005
    for d in np.linspace(0, 0.6193, 40):
        assert holo.P(float(d)) == 1
    b = holo.delta_cutoff_none
    assert round(b, 4) == 0.9546
    assert holo.P(b) == 0 and holo.P(b + 1e-4) == 0 and holo.P(1.5) == 0
    assert holo.P(b - 1e-4) > 0


def test_theta_at_zero(holo):
    assert holo.Theta(0) == A1
    assert ab.grid_search("holomorphic", 50, 0.002).Theta(0) == A1


def test_monotone_records(holo):
    d = holo.deltas
    Bs = [r.B for r in holo.records]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert all(b <= a for a, b in zip(Bs, Bs[1:]))


def test_strict_B_range(strict):
    for r in strict.records:
        assert 0.5 * math.tan(r.beta / 2) < r.B < math.sin(r.alpha)
    assert all(b < a for a, b in zip(strict.deltas, strict.deltas[1:]))


def test_default_B_range(holo):
    # the default starts the B grid at 1/2; near rho the chosen B sits below tan(beta/2)/2
    below = [r.r for r in holo.records if r.B <= 0.5 * math.tan(r.beta / 2)]
    assert all(0.5 <= r.B < math.sin(r.alpha) for r in holo.records)
    assert below and below == list(range(below[0], 1000))


def test_P_above_chord(holo):
    bad = []
    for d in np.linspace(0.6194, 0.9546, 400):
        chord = 1 - 2.9832 * (d - 0.6194)
        if holo.P(float(d)) < chord:
            bad.append((round(float(d), 4), holo.P(float(d)), chord))
    assert not bad, f"{len(bad)} grid points below the chord, first {bad[:3]}"


def test_P_range_and_monotone(holo):
    ds = np.linspace(0, 1.2, 500)
    ps = [holo.P(float(d)) for d in ds]
    assert all(0 <= p <= 1 for p in ps)
    assert all(b <= a + 1e-15 for a, b in zip(ps, ps[1:]))


def test_weak_cutoffs():
    w = ab.grid_search("weak", 1000, 0.0005)
    assert abs(w.delta_cutoff_all - 1.1598) <= 0.002
    assert abs(w.delta_cutoff_none - 1.1026) <= 0.002
    assert w.P_minus(1.2) == 1 and w.P_minus(1.0) == 0
    assert 0 <= w.P_minus(1.13) <= 1


def test_certified_values_bracket():
    t = ab.grid_search("holomorphic", 40, 0.002)
    ab.certify_table(t)
    for r in t.records:
        assert r.delta_cert <= r.delta + 1e-9
        assert r.delta - r.delta_cert < 1e-9


def test_table_exports(tmp_path, holo):
    holo.write_csv(tmp_path / "t.csv")
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0].split(",")[:5] == ["r", "alpha", "beta", "B", "delta"]
    assert len(lines) == 1001
    holo.write_json(tmp_path / "t.json")
    data = json.loads((tmp_path / "t.json").read_text())
    assert "breakpoints" in json.dumps(data) and "values" in json.dumps(data)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2000), st.integers(0, 2000))
def test_arc_count_full_arc(ell, m):
    if m > ell:
        return
    assert ab.predicted_arc_count(12 * ell, m, A0, A1) == ell - m


def test_arc_count_examples():
    assert ab.predicted_arc_count(12000, 500, A0, A1) == 500
    assert ab.predicted_arc_count(12000, 500, ("pi", Fraction(1, 2)), ("pi", Fraction(2, 3))) == 500
    assert ab.predicted_arc_count(1200, 0, 1.7, 1.7 + 1e-7) == 0
    assert ab.predicted_arc_count(1200, 37, 1.9, 1.9 + 1e-9) == 0
    with pytest.raises(ValueError):
        ab.predicted_arc_count(1200, 99, A0, A1, require_monotone=True)
    assert ab.predicted_arc_count(1200, 90, A0, A1, require_monotone=True) == 10


def test_cos_approximation():
    th = np.linspace(A0, A1, 52)[1:-1]
    err, im = ab.cos_approx_error(1200, 0, th)
    assert err < 0.5
    assert im < 2e-10
    err2, _ = ab.cos_approx_error(2400, 0, th)
    print(f"cosine approximation error: k=1200 {err:.3g}, k=2400 {err2:.3g}")
