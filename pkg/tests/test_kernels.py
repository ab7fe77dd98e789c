"""The compiled kernels and the pure-Python fallback must agree."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkforge import _kernels
from rkforge.rooted_trees import tree_table
from rkforge.tableau import TABLE46_PARAMS, builtin, family_core

py = _kernels.python_backend
cy = _kernels.compiled_backend
needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")

seeds = st.integers(0, 2**32 - 1)


def _family_arrays(seed):
    rng = np.random.default_rng(seed)
    c = np.concatenate([[0.0], np.sort(rng.uniform(0.05, 1.0, 7)), [1.0]])
    c[2] = 2 * c[3] / 3
    A = np.tril(rng.normal(size=(9, 9)), -1)
    return c, A


@needs_ext
@settings(max_examples=50, deadline=None)
@given(seeds)
def test_a85_residual_and_fill_rows(seed):
    c, A = _family_arrays(seed)
    assert cy.a85_residual(c, A) == pytest.approx(py.a85_residual(c, A), rel=1e-12, abs=1e-12)
    A1, A2 = A.copy(), A.copy()
    py.fill_rows(c, A1)
    cy.fill_rows(c, A2)
    np.testing.assert_allclose(A2, A1, rtol=1e-12, atol=1e-12)


@needs_ext
@settings(max_examples=30, deadline=None)
@given(seeds)
def test_elementary_weights(seed):
    _, A = _family_arrays(seed)
    tt = tree_table(7)
    np.testing.assert_allclose(cy.elementary_weights(A, tt.child_ptr, tt.child_idx),
                               py.elementary_weights(A, tt.child_ptr, tt.child_idx), rtol=1e-11, atol=1e-12)


@needs_ext
@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 7))
def test_variation(seed, k):
    B = np.random.default_rng(seed).normal(size=(k, 6))
    Vp, Np = py.variation(B)
    Vc, Nc = cy.variation(B)
    assert Vc == pytest.approx(Vp, rel=1e-12)
    assert Nc == pytest.approx(Np, rel=1e-12, abs=1e-14)


@needs_ext
@settings(max_examples=50, deadline=None)
@given(seeds)
def test_poly_max(seed):
    coef = np.random.default_rng(seed).normal(size=9)
    xp, vp = py.poly_max(coef, 1001, 1e-8)
    xc, vc = cy.poly_max(coef, 1001, 1e-8)
    assert vc == pytest.approx(vp, rel=1e-12, abs=1e-14)
    assert abs(xc - xp) < 1e-7


@needs_ext
@pytest.mark.parametrize("name", ["table46", "dormand_prince"])
def test_rk_step(name):
    pair = builtin(name)

    def f(t, x):
        return np.array([x[1], -np.sin(x[0]) + 0.1 * t])

    x = np.array([0.3, -0.2])
    for F1 in (None, f(0.0, x)):
        a = py.rk_step(f, 0.0, x, 0.2, pair.A, pair.c, pair.b, pair.d_basis, F1, pair.tableau.fsal_index)
        b = cy.rk_step(f, 0.0, x, 0.2, pair.A, pair.c, pair.b, pair.d_basis, F1, pair.tableau.fsal_index)
        np.testing.assert_allclose(b[0], a[0], rtol=1e-14, atol=1e-15)
        np.testing.assert_allclose(b[1], a[1], rtol=1e-14, atol=1e-15)
        # E is a cancelling sum: compare against the size of its terms
        scale = 0.2 * np.max(np.abs(pair.d_basis)) * np.max(np.abs(a[1])) * pair.s
        np.testing.assert_allclose(b[2], a[2], rtol=0, atol=1e-15 * scale)
        assert a[3] == b[3] == pair.s - (F1 is not None)


def test_variation_of_known_polynomials():
    # beta = theta^2 on [0, 1] is monotone: V = 1; beta = 4 theta (1 - theta) rises then falls: V = 2
    V, N = py.variation(np.array([[0.0], [1.0]]))
    assert (V, N) == pytest.approx((1.0, 0.0))
    V, N = py.variation(np.array([[4.0], [-4.0]]))
    assert V == pytest.approx(2.0) and N == pytest.approx(1.0)


def test_poly_max_finds_interior_peak():
    # -(x - 0.3)^2 peaks at 0.3
    x, v = py.poly_max(np.array([-0.09, 0.6, -1.0]), 1001, 1e-10)
    assert x == pytest.approx(0.3, abs=1e-8)
    assert v == pytest.approx(0.0, abs=1e-15)


def test_backend_selection_env():
    code = "from rkforge import _kernels; print(_kernels.BACKEND)"
    env = dict(os.environ, RKFORGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_family_core_same_on_both_backends(monkeypatch):
    ref = family_core(TABLE46_PARAMS)
    for name in ("a85_residual", "fill_rows"):
        monkeypatch.setattr(_kernels, name, getattr(py, name))
    alt = family_core(TABLE46_PARAMS)
    np.testing.assert_allclose(alt.A, ref.A, rtol=1e-13, atol=1e-14)
