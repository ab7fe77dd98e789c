import logging

import numpy as np
import pytest

from rkforge.integrate import SolveOptions, solve
from rkforge.problems import (
    PROBLEM_NAMES,
    atol_grid,
    circle_test,
    endpoint_errors,
    kepler_anomaly,
    problem,
    two_body_exact,
    two_body_invariants,
    work_precision,
)


def test_closed_form_references():
    a3 = problem("A3")
    assert a3.ref(np.array([2 * np.pi]))[0, 0] == pytest.approx(1.0, abs=1e-15)
    assert np.allclose(a3.system.f(0.0, np.array([2.0])), [2.0])
    rot = problem("rotation")
    assert np.allclose(rot.ref(np.array([np.pi / 2]))[0], [0.0, 1.0], atol=1e-15)
    assert rot.t_end == pytest.approx(2 * np.pi)


def test_problem_lookup():
    for name in PROBLEM_NAMES:
        assert problem(name).name == name
    for name in ("U1", "u3", "U5"):
        with pytest.raises(ValueError, match="unavailable"):
            problem(name)
    with pytest.raises(ValueError, match="unknown problem"):
        problem("B7")


def test_kepler_equation():
    M = np.linspace(-10, 30, 401)
    for ecc in (0.0, 0.5, 0.9, 0.99):
        E = kepler_anomaly(M, ecc)
        assert np.max(np.abs(E - ecc * np.sin(E) - M)) < 1e-12


def test_two_body_invariants():
    d5 = problem("D5")
    x = two_body_exact(np.linspace(0, 20, 201))
    assert np.allclose(x[0], d5.x0, atol=1e-15)
    energy, mom = two_body_invariants(x)
    assert np.max(np.abs(energy + 0.5)) < 1e-12
    assert np.max(np.abs(mom - np.sqrt(1 - 0.9**2))) < 1e-12


def test_two_body_matches_integration(table46):
    d5 = problem("D5")
    sol = solve(table46, d5.system, 0.0, d5.x0, 5.0, SolveOptions(atol=1e-12))
    assert sol.success
    assert np.max(endpoint_errors(sol, d5)) < 1e-8
    # the closed form also satisfies the differential equation
    t = np.array([0.7, 3.1])
    dt = 1e-5
    fd = (two_body_exact(t + dt) - two_body_exact(t - dt)) / (2 * dt)
    rhs = np.array([d5.system.f(0.0, x) for x in two_body_exact(t)])
    assert np.allclose(fd, rhs, atol=1e-6)


def test_van_der_pol_reference():
    e2 = problem("E2")
    assert e2.ref_kind == "self-integration"
    assert np.allclose(e2.ref(np.array([0.0]))[0], [2.0, 0.0])
    x = e2.ref(np.array([20.0]))[0]
    assert np.all(np.isfinite(x))


def test_atol_grid():
    g = atol_grid(1e-3, 1e-9, 2)
    assert len(g) == 13
    assert g[0] == 1e-3 and g[-1] == pytest.approx(1e-9)
    assert np.all(np.diff(g) < 0)


def test_work_precision(table46):
    a3 = problem("A3")
    atols = atol_grid(1e-3, 1e-9, 1)
    pts = work_precision(table46, a3, atols)
    assert pts == work_precision(table46, a3, atols)
    assert [p.atol for p in pts] == list(atols)
    evals = [p.rhs_evals for p in pts]
    assert evals == sorted(evals)
    assert all(p.max_error <= 100 * p.atol for p in pts)


def test_work_precision_skips_failures(table46, caplog):
    a3 = problem("A3")
    with caplog.at_level(logging.WARNING):
        pts = work_precision(table46, a3, [1e-18])
    assert pts == [] or pts[0].atol == 1e-18
    if not pts:
        assert "failed" in caplog.text


def test_circle(table46, dopri):
    res = circle_test(table46)
    assert 0.6e-4 < res.endpoint_error < 2.5e-4
    assert len(res.thetas) == 11
    assert 1e-4 < res.curve_error.max() < 4.3e-4
    assert res.stage_deviation[0] == 0.0
    assert res.stages.shape == (table46.s, 2)
    assert 3.4e-3 < circle_test(dopri).endpoint_error < 1.4e-2
