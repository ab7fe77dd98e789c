from fractions import Fraction

import numpy as np
import pytest

from rkforge.errors import FamilyError
from rkforge.optimize import (
    LOWER,
    UPPER,
    ObjectiveSpec,
    evaluate,
    evaluate_full,
    latin_starts,
    objective_a,
    objective_b,
    rationalize,
    search,
)
from rkforge.metrics import endpoint_error
from rkforge.tableau import TABLE46_PARAMS, FamilyParams


def _degenerate():
    x = TABLE46_PARAMS.as_array()
    x[2] = x[1]  # c5 = c4
    return x


def test_spec_validation():
    assert ObjectiveSpec("a").kind == "A"
    with pytest.raises(ValueError):
        ObjectiveSpec("C")
    with pytest.raises(ValueError):
        ObjectiveSpec("A", w_V=-1.0)


def test_degenerate_params_give_inf():
    assert objective_a(_degenerate()) == np.inf
    assert evaluate_full(ObjectiveSpec("B"), _degenerate()) == (np.inf, False)


def test_objective_values_at_table46(table46):
    a = objective_a(TABLE46_PARAMS)
    # V >= 1 bounds objective A from below
    assert a >= 1e-4
    assert a == objective_a(TABLE46_PARAMS.as_array())
    T6 = endpoint_error(table46, table46.b, 6)
    T7 = endpoint_error(table46, table46.b, 7)
    assert T6 < 1e-15
    assert objective_b(TABLE46_PARAMS) == pytest.approx(T6 + 1e6 * (T7 - 10 * T6) ** 2, rel=1e-8)
    assert not evaluate_full(ObjectiveSpec("B"), TABLE46_PARAMS)[1]
    assert evaluate(ObjectiveSpec("B", penalty=0.0), TABLE46_PARAMS) == pytest.approx(T6, abs=1e-14)


def test_latin_starts():
    X = latin_starts(16, 4)
    assert X.shape == (16, 11)
    assert np.all(X >= LOWER) and np.all(X <= UPPER)
    assert np.all(np.diff(X[:, 1:6], axis=1) >= 0)
    assert np.array_equal(X, latin_starts(16, 4))


def test_budget_one_returns_start():
    res = search(ObjectiveSpec("A"), starts=1, budget=1, x0=TABLE46_PARAMS)
    assert res.ok
    assert res.n_evals == 1
    assert np.array_equal(res.params.as_array(), TABLE46_PARAMS.as_array())
    assert res.value == objective_a(TABLE46_PARAMS)


def test_search_is_deterministic(tmp_path):
    spec = ObjectiveSpec("A")
    r1 = search(spec, starts=2, budget=80, seed=5)
    r2 = search(spec, starts=2, budget=80, seed=5)
    assert r1.value == r2.value
    assert np.array_equal(r1.params.as_array(), r2.params.as_array())
    assert r1.n_evals <= 160
    assert max(r1.checks.values()) <= 1e-9
    path = tmp_path / "trace.csv"
    r1.write_trace(path)
    assert path.read_text().startswith("start,eval,objective,feasible")


def test_search_improves_on_its_start():
    spec = ObjectiveSpec("A")
    res = search(spec, starts=1, budget=150, x0=TABLE46_PARAMS)
    assert res.value <= objective_a(TABLE46_PARAMS)


def test_search_arguments():
    with pytest.raises(ValueError):
        search(ObjectiveSpec("A"), starts=0)


def test_rationalize_small_denominators_unchanged():
    res = rationalize(TABLE46_PARAMS, 10**6)
    for n in FamilyParams.names:
        assert getattr(res.params, n) == getattr(TABLE46_PARAMS, n)
    assert res.drift == 0.0
    assert max(res.checks.values()) < 1e-12


def test_rationalize_continued_fraction():
    x = TABLE46_PARAMS.as_array()
    x[1] = 3 / 14 + 1e-9
    res = rationalize(x, 100)
    assert res.params.c4 == Fraction(3, 14)
    assert all(getattr(res.params, n).denominator <= 100 for n in FamilyParams.names)


def test_rationalize_drift():
    found = search(ObjectiveSpec("A"), starts=1, budget=300, seed=2)
    res = rationalize(found.params, 10**4)
    assert res.drift <= 0.05


def test_rationalize_degenerate():
    x = TABLE46_PARAMS.as_array()
    x[1], x[2] = 0.5, 0.5 + 1e-7
    with pytest.raises(FamilyError):
        rationalize(x, 100)
    with pytest.raises(ValueError):
        rationalize(x, 0)
