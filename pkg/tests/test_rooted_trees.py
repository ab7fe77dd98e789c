import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rkforge.rooted_trees import (
    LEAF,
    RootedTree,
    T_p,
    bushy,
    chain,
    elementary_weight,
    enumerate_trees,
    from_levels,
    gamma,
    otter_counts,
    sigma,
    tau,
    tree_table,
    trees_of_order,
)


# --- independent oracle: parent arrays -------------------------------------------


def _canon(parent, v=0):
    """Nested sorted-tuple canonical form of the subtree at v."""
    kids = [u for u in range(len(parent)) if parent[u] == v and u != v]
    return tuple(sorted(_canon(parent, u) for u in kids))


def brute_force_shapes(n):
    """All unlabeled rooted trees on n vertices: every parent array, deduplicated."""
    shapes = set()
    # vertex 0 is the root; vertex k > 0 picks any earlier parent
    for parents in itertools.product(*[range(k) for k in range(1, n)]):
        shapes.add(_canon((0,) + parents))
    return shapes


def brute_force_automorphisms(t: RootedTree) -> int:
    """Count root-preserving automorphisms by trying every vertex permutation."""
    parent = []

    def walk(node, par):
        me = len(parent)
        parent.append(par)
        for kid in node.children:
            walk(kid, me)

    walk(t, -1)
    n = len(parent)
    edges = {(parent[v], v) for v in range(1, n)}
    count = 0
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        if all((p[a], p[b]) in edges for a, b in edges):
            count += 1
    return count


def _to_nested(t):
    return tuple(sorted(_to_nested(k) for k in t.children))


@pytest.mark.parametrize("p", range(1, 8))
def test_enumeration_matches_brute_force(p):
    mine = {_to_nested(t) for t in trees_of_order(p)}
    assert len(mine) == len(trees_of_order(p))
    assert mine == brute_force_shapes(p)


def test_counts_and_otter_recurrence():
    counts = [len(g) for g in enumerate_trees(10)]
    assert counts[:7] == [1, 1, 2, 4, 9, 20, 48]
    assert counts == otter_counts(10)


def test_enumeration_is_deterministic():
    a = [t.levels for g in enumerate_trees(6) for t in g]
    b = [t.levels for g in enumerate_trees(6) for t in g]
    assert a == b
    assert enumerate_trees(1) == [[LEAF]]


@pytest.mark.parametrize("bad", [0, 11, -1, 2.5])
def test_enumerate_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        enumerate_trees(bad)


def test_gamma_sigma_table_values():
    assert gamma(chain(5)) == 120
    assert gamma(bushy(5)) == 5
    assert gamma(LEAF) == 1
    assert sigma(bushy(5)) == 24
    assert sigma(bushy(4)) == 6
    for n in range(1, 8):
        assert sigma(chain(n)) == 1
        assert gamma(chain(n)) == math.factorial(n)


@pytest.mark.parametrize("p", range(1, 7))
def test_sigma_matches_automorphism_count(p):
    for t in trees_of_order(p):
        assert t.sigma == brute_force_automorphisms(t)


@pytest.mark.parametrize("p", range(1, 8))
def test_labelling_identity(p):
    # p!/(sigma gamma) counts increasing labellings; they total (p-1)!
    total = 0
    for t in trees_of_order(p):
        q, r = divmod(math.factorial(p), t.sigma * t.gamma)
        assert r == 0
        total += q
    assert total == math.factorial(p - 1)


def test_canonical_form_ignores_child_order():
    a = RootedTree([chain(2), LEAF, bushy(3)])
    b = RootedTree([LEAF, bushy(3), chain(2)])
    assert a == b and hash(a) == hash(b)
    assert from_levels([0, 1, 1, 2]) == from_levels([0, 1, 2, 1])
    with pytest.raises(ValueError):
        from_levels([1, 0])


@st.composite
def trees(draw, max_order=7):
    p = draw(st.integers(1, max_order))
    return draw(st.sampled_from(trees_of_order(p)))


def _shuffled_levels(t, rng):
    kids = list(t.children)
    rng.shuffle(kids)
    seq = [0]
    for k in kids:
        seq.extend(d + 1 for d in _shuffled_levels(k, rng))
    return seq


@settings(max_examples=60, deadline=None)
@given(trees(), st.integers(0, 2**31 - 1))
def test_weight_invariant_under_child_shuffles(t, seed):
    rng = np.random.default_rng(seed)
    A = np.tril(rng.normal(size=(6, 6)), -1)
    u = from_levels(_shuffled_levels(t, rng))
    assert u == t
    np.testing.assert_array_equal(elementary_weight(A, u), elementary_weight(A, t))


def test_elementary_weight_examples(dopri):
    A = dopri.A
    np.testing.assert_array_equal(elementary_weight(A, LEAF), np.ones(7))
    np.testing.assert_allclose(elementary_weight(A, chain(2)), dopri.c, atol=1e-15)


def test_three_chain_is_half_c_squared_plus_q1(table46):
    # for the family q1 vanishes except in component 2
    A, c = table46.A, table46.c
    phi = elementary_weight(A, chain(3))
    diff = phi - c**2 / 2
    assert np.max(np.abs(np.delete(diff, 1))) < 1e-15
    assert abs(diff[1]) > 1e-3


def test_tree_table_matches_recursive_weights(dopri):
    tt = tree_table(7)
    W = tt.weights(dopri.A)
    for k, t in enumerate(tt.trees):
        np.testing.assert_allclose(W[k], elementary_weight(dopri.A, t), rtol=1e-13, atol=1e-14)


def test_tau_examples(dopri, table46):
    for p in range(1, 6):
        for t in trees_of_order(p):
            assert abs(tau(t, dopri.b, 1.0, dopri)) < 1e-14
    # stage 5 of the (4,5) pair on the tree behind A c
    assert abs(tau(chain(3), dopri.A[4], dopri.c[4], dopri)) == pytest.approx(2536 / 10935, abs=1e-14)
    assert T_p(table46.b, 1.0, 6, table46) < 1e-13
    assert T_p(dopri.b, 1.0, 6, dopri) == pytest.approx(3.9908e-4, rel=1e-4)
    with pytest.raises(ValueError):
        tau(LEAF, np.ones(3), 1.0, dopri)


def test_interpolant_tau_vanishes_on_two_chain(table46):
    for th in np.linspace(0, 1, 7):
        beta = table46.interpolant(th)
        assert abs(tau(chain(2), beta, th, table46)) < 1e-14
