from math import factorial

import numpy as np
import pytest
from scipy.optimize import brentq

from rkforge.metrics import (
    StabilityPolynomial,
    continuous_error_max,
    endpoint_error,
    error_profile,
    max_abs_coefficient,
    negativity,
    pair_report,
    stability_polynomial,
    stability_region,
    stage_error,
    total_variation,
    variation,
)
from rkforge.tableau import Interpolant


def test_dopri_endpoint_norms(dopri):
    b4 = dopri.b + dopri.d_basis[0]
    assert endpoint_error(dopri, dopri.b, 6) == pytest.approx(3.9908e-4, rel=5e-5)
    assert endpoint_error(dopri, dopri.b, 7) == pytest.approx(3.9557e-3, rel=5e-5)
    assert endpoint_error(dopri, b4, 5) == pytest.approx(1.1829e-3, rel=5e-5)
    assert endpoint_error(dopri, dopri.b / 3 + 2 * b4 / 3, 5) == pytest.approx(7.8863e-4, rel=5e-5)
    with pytest.raises(ValueError):
        endpoint_error(dopri, dopri.b, 8)


def test_order6_pair_has_zero_t6(table46):
    assert endpoint_error(table46, table46.b, 6) < 1e-15


@pytest.mark.parametrize("i,value", [(3, 9 / 2000), (4, 28 / 375), (5, 2536 / 10935), (6, 71 / 330)])
def test_dopri_stage_errors(dopri, i, value):
    assert stage_error(dopri.tableau, i) == pytest.approx(value, abs=1e-12)


def test_stage_error_range(dopri):
    with pytest.raises(ValueError):
        stage_error(dopri.tableau, 0)
    with pytest.raises(ValueError):
        stage_error(dopri.tableau, 8)


def test_continuous_error_max(table46, family_pairs):
    th, v = continuous_error_max(table46, 6)
    assert 0 < th < 1 and v > 1e-5
    assert error_profile(table46, 6, [1.0])[0] < 1e-14
    # the grid maximum is never above the refined maximum
    grid = error_profile(table46, 6, np.linspace(0, 1, 1001))
    assert grid.max() <= v * (1 + 1e-12)
    for pair in family_pairs[:3]:
        assert continuous_error_max(pair, 5)[1] < 1e-9
        at_one = error_profile(pair, 6, [1.0])[0]
        assert at_one == pytest.approx(endpoint_error(pair, pair.b, 6), rel=1e-9, abs=1e-12)


def test_variation_identity(table46, dopri, family_pairs):
    for pair in [table46, dopri] + family_pairs:
        V, N = variation(pair.interpolant)
        assert V - (1 + 2 * N) == pytest.approx(0.0, abs=1e-10)
        assert total_variation(pair.interpolant) == V
        assert negativity(pair.interpolant) == N


def test_monotone_interpolant_has_unit_variation():
    b = np.array([0.1, 0.2, 0.3, 0.4])
    # beta_j = b_j theta and beta_j = b_j theta^2 (1 + theta)/2 are both nondecreasing
    assert variation(Interpolant([b])) == pytest.approx((1.0, 0.0))
    assert variation(Interpolant([0 * b, b / 2, b / 2]))[0] == pytest.approx(1.0)


def test_variation_permutation_invariant(table46):
    perm = np.random.default_rng(0).permutation(table46.s)
    B = table46.interpolant.B
    assert variation(Interpolant(B[:, perm]))[0] == pytest.approx(variation(table46.interpolant)[0], rel=1e-14)


def test_stability_polynomials(dopri, table46, family_pairs):
    r = stability_polynomial(dopri.tableau)
    assert r.degree == 6
    assert r.matches_exponential_through() >= 5
    assert stability_polynomial(table46.tableau).matches_exponential_through() >= 6
    for pair in family_pairs[:3]:
        assert stability_polynomial(pair.tableau).matches_exponential_through() >= 5
        low = stability_polynomial(pair.tableau, pair.b + pair.d_basis[0])
        assert low.matches_exponential_through() == 4


def test_euler_region_is_unit_circle():
    res = 401
    lines = stability_region(StabilityPolynomial(np.array([1.0, 1.0])), 1.0, (-2.5, 0.5, -1.5, 1.5), res)
    z = np.concatenate(lines)
    cell = 3.0 / (res - 1)
    assert np.max(np.abs(np.abs(z + 1) - 1)) < cell


def test_truncated_exponential_crossing():
    poly = StabilityPolynomial(np.array([1 / factorial(k) for k in range(6)]))
    x_star = brentq(lambda x: abs(poly(x)) - 1.0, -4.0, -2.0)
    assert x_star == pytest.approx(-3.217, abs=1e-3)
    z = np.concatenate(stability_region(poly, 1.0, (-4, 1, -4, 4), 401))
    cell = 8.0 / 400
    assert np.min(np.abs(z - x_star)) < cell


def test_scaled_region_shrinks(dopri):
    poly = stability_polynomial(dopri.tableau)
    full = np.concatenate(stability_region(poly, 1.0, (-5, 1, -4, 4), 601))
    small = np.concatenate(stability_region(poly, 6.0, (-5 / 6, 1 / 6, -4 / 6, 4 / 6), 601))
    assert np.max(np.abs(np.sort(np.abs(full)) / 6 - np.sort(np.abs(small)))) < 2 * (8 / 600) / 6 + 1e-12


def test_stability_region_errors():
    poly = StabilityPolynomial(np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        stability_region(poly, 0.0, (-1, 1, -1, 1))
    with pytest.raises(ValueError):
        stability_region(poly, 1.0, (1, -1, -1, 1))


def test_pair_report(dopri):
    rep = pair_report(dopri)
    assert set(rep) == {"T5", "T6", "T7", "max_T6_theta", "V", "max_abs_a"}
    assert rep["max_abs_a"] == max_abs_coefficient(dopri.tableau)
