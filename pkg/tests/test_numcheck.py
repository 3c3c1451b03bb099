import cmath
import csv
import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stableharm import series as ps
from stableharm.catalog import harmonic_half_plane_L, harmonic_koebe_K, half_plane_l, koebe_k, mapping_M
from stableharm.errors import DomainError
from stableharm.grid import GridSpec
from stableharm.harmonic import analytic_slice, epsilon_rotate
from stableharm.numcheck import (
    GOLDEN_RADIUS,
    STABILITY_GRID,
    TriState,
    convexity_check,
    eps_circle,
    eps_disk,
    m_slice_a7,
    m_slice_derivative_test,
    stability_scan,
    univalence_check,
    v_alpha_ratio,
    v_alpha_ratio_series,
)
from stableharm.numcheck import _self_crossing

FINE = GridSpec(n_radii=24, r_max=0.95, n_angles=96)


def test_known_univalent_functions_pass():
    assert univalence_check(koebe_k(64)).verdict is TriState.PASS
    assert univalence_check(half_plane_l(64)).verdict is TriState.PASS
    assert univalence_check(ps.identity(8)).verdict is TriState.PASS


def test_square_fails_with_collision():
    res = univalence_check(ps.monomial(2, 8), coefficient_test=False)
    assert res.verdict is TriState.FAIL
    a, b = res.witness.points
    assert abs(a * a - b * b) < 1e-5 and abs(a - b) > 1e-3


def test_critical_point_inside_disk_fails_geometrically():
    # z + 0.9 z^2 folds near z = -1/1.8 although |a_2| <= 2
    s = ps.polynomial([0, 1, 0.9], 8)
    res = univalence_check(s, FINE)
    assert res.verdict is TriState.FAIL and res.witness.kind != "coefficient"


def test_coefficient_witness():
    res = univalence_check(analytic_slice(harmonic_koebe_K(64), 1))
    assert res.verdict is TriState.FAIL
    assert res.witness.kind == "coefficient" and res.witness.index == 2
    assert res.witness.describe() == "coefficient n=2"


def test_koebe_slice_at_plus_one_fails_without_coefficients():
    res = univalence_check(analytic_slice(harmonic_koebe_K(256), 1), FINE, coefficient_test=False)
    assert res.verdict is TriState.FAIL
    a, b = res.witness.points
    assert abs(a - b) > 0.1


def test_self_crossing_of_figure_eight():
    t = 2 * np.pi * (np.arange(200) + 0.3) / 200
    eight = np.sin(t) + 1j * np.sin(2 * t)
    assert _self_crossing(eight, 1e-9) is not None
    assert _self_crossing(np.exp(1j * t), 1e-9) is None


@settings(max_examples=15, deadline=None)
@given(st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_univalence_verdict_respects_rotation(a, b):
    K = harmonic_koebe_K(32)
    delta, eps = cmath.exp(1j * a), cmath.exp(1j * b)
    lhs = univalence_check(analytic_slice(epsilon_rotate(K, delta), eps))
    rhs = univalence_check(analytic_slice(K, eps * delta))
    assert lhs.verdict is rhs.verdict


def test_convexity_of_half_plane_and_its_slice():
    for s in (half_plane_l(1024), analytic_slice(harmonic_half_plane_L(1024), 1)):
        res = convexity_check(s, 0.95)
        assert res.verdict is TriState.PASS
        assert res.real_part_condition
        assert res.real_part_min > 0.5


def test_koebe_is_not_convex():
    res = convexity_check(koebe_k(1024), 0.95, coefficient_test=False)
    assert res.verdict is TriState.FAIL and res.witness.kind == "reflex-vertex"
    assert convexity_check(koebe_k(64), 0.5).witness.kind == "coefficient"
    with pytest.raises(DomainError):
        convexity_check(koebe_k(8), 1.0)


@pytest.mark.parametrize("order", [32, 64, 128])
def test_exceptional_slices_rejected(order):
    K, L = harmonic_koebe_K(order), harmonic_half_plane_L(order)
    assert stability_scan(K, [1]).rows[0].slice_univalent is not TriState.PASS
    assert stability_scan(L, [-1]).rows[0].slice_convex is not TriState.PASS


def test_sections_of_koebe_lose_univalence_near_the_rim():
    # partial sums of k are univalent only for |z| below roughly 1 - 3 log(n)/n
    assert stability_scan(harmonic_koebe_K(32), [-1]).rows[0].slice_univalent is TriState.FAIL
    assert stability_scan(harmonic_koebe_K(64), [-1]).rows[0].slice_univalent is TriState.PASS
    assert stability_scan(harmonic_half_plane_L(64), [1]).rows[0].slice_convex is TriState.PASS


def test_scan_csv():
    table = stability_scan(harmonic_koebe_K(64), eps_circle(4))
    rows = list(csv.reader(io.StringIO(table.to_csv())))
    assert rows[0] == ["eps_re", "eps_im", "univalent", "convex", "witness"]
    assert len(rows) == 5 and len(table) == 4
    assert rows[3][2] == "pass"  # eps = -1


def test_eps_samplers():
    assert eps_circle(4)[0] == 1 and len(eps_circle(360)) == 360
    d = eps_disk(5)
    assert d[0] == 0 and len(d) == 1 + 4 * 5
    assert all(abs(e) < 1 for e in d)
    with pytest.raises(DomainError):
        stability_scan(harmonic_koebe_K(16), [1.5])


def test_m_slice_a7_matches_series():
    M = mapping_M(64)
    rng = np.random.default_rng(8)
    for _ in range(20):
        eps = np.sqrt(rng.random()) * cmath.exp(2j * np.pi * rng.random())
        assert m_slice_a7(eps) == pytest.approx(abs(analytic_slice(M, eps).coeffs[7]), abs=1e-10)


def test_m_derivative_closed_form_vs_series():
    rng = np.random.default_rng(9)
    for _ in range(100):
        t = rng.uniform(np.pi / 2, 3 * np.pi / 2)
        eps = (0.05 + 0.95 * rng.random()) * cmath.exp(1j * t)
        r = rng.uniform(0.01, GOLDEN_RADIUS - 0.01)
        res = m_slice_derivative_test(eps, r)
        assert abs(res.lhs - res.lhs_series) <= 1e-7 * max(1.0, res.lhs)
        assert res.violated


def test_m_derivative_domain():
    with pytest.raises(DomainError):
        m_slice_derivative_test(0.5, 1.0)


def test_v_alpha_ratio_series_agreement():
    for eps in (1, 1j, -1, 0.5):
        for r in (0.5, 0.9, 0.99):
            closed = v_alpha_ratio(3, 0.2, eps, r)
            assert closed == pytest.approx(v_alpha_ratio_series(3, 0.2, eps, r), abs=1e-7)


def test_v_alpha_ratio_limit():
    for eps in (1, 1j, -1, 0.5):
        val = v_alpha_ratio(3, 0.2, eps, 0.999)
        assert abs(val - (1 - abs(0.2 * eps)) / 2) < 2e-3 and val < 0.5
    with pytest.raises(DomainError):
        v_alpha_ratio(3, 0.2, 0, 0.5)


def test_stability_grid_defaults():
    assert STABILITY_GRID.r_max < 1 and STABILITY_GRID.n_angles >= 8
