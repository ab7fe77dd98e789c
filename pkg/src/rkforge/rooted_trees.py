"""Rooted trees and the tree functionals behind Runge-Kutta order conditions.

A tree is stored in canonical form: its children are sorted so that their
level sequences are in non-increasing lexicographic order.  Two trees are
equal iff they are isomorphic as rooted trees.
"""
from __future__ import annotations

import math
from collections import Counter
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 10


class RootedTree:
    """Canonical rooted tree.  Build with ``RootedTree(children)``."""

    def __init__(self, children: Iterable[RootedTree] = ()):
        kids = sorted(children, key=lambda t: t.levels, reverse=True)
        self.children: tuple[RootedTree, ...] = tuple(kids)
        self.order: int = 1 + sum(t.order for t in self.children)
        seq = [0]
        for t in self.children:
            seq.extend(d + 1 for d in t.levels)
        self._levels = tuple(seq)

    @property
    def levels(self) -> tuple[int, ...]:
        """Depth-first level sequence of the canonical form."""
        return self._levels

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootedTree) and self._levels == other._levels

    def __hash__(self) -> int:
        return hash(self._levels)

    def __lt__(self, other: RootedTree) -> bool:
        return (self.order, self._levels) < (other.order, other._levels)

    def __repr__(self) -> str:
        return f"RootedTree({self.bracket()})"

    def bracket(self) -> str:
        """Butcher bracket notation, e.g. ``[[*],*]``; a single vertex is ``*``."""
        if not self.children:
            return "*"
        return "[" + ",".join(t.bracket() for t in self.children) + "]"

    @cached_property
    def gamma(self) -> int:
        return gamma(self)

    @cached_property
    def sigma(self) -> int:
        return sigma(self)


LEAF = RootedTree()


def chain(n: int) -> RootedTree:
    """The tall tree with ``n`` vertices."""
    t = LEAF
    for _ in range(n - 1):
        t = RootedTree([t])
    return t


def bushy(n: int) -> RootedTree:
    """Root with ``n - 1`` leaves."""
    return RootedTree([LEAF] * (n - 1))


def from_levels(levels: Sequence[int]) -> RootedTree:
    """Rebuild a tree from any (not necessarily canonical) level sequence."""
    if not levels or levels[0] != 0:
        raise ValueError("level sequence must start with 0")

    def build(pos: int, depth: int) -> tuple[RootedTree, int]:
        kids = []
        pos += 1
        while pos < len(levels) and levels[pos] == depth + 1:
            kid, pos = build(pos, depth + 1)
            kids.append(kid)
        return RootedTree(kids), pos

    tree, end = build(0, 0)
    if end != len(levels):
        raise ValueError(f"malformed level sequence {tuple(levels)}")
    return tree


@lru_cache(maxsize=None)
def _trees_of_order(n: int) -> tuple[RootedTree, ...]:
    if n == 1:
        return (LEAF,)
    # Children form a multiset of trees whose orders sum to n - 1.  Draw them
    # from a fixed global ordering with non-increasing index to avoid repeats.
    pool = [t for k in range(1, n) for t in _trees_of_order(k)]
    out: list[RootedTree] = []

    def extend(remaining: int, max_idx: int, acc: list[RootedTree]) -> None:
        if remaining == 0:
            out.append(RootedTree(acc))
            return
        for idx in range(max_idx, -1, -1):
            t = pool[idx]
            if t.order <= remaining:
                acc.append(t)
                extend(remaining - t.order, idx, acc)
                acc.pop()

    extend(n - 1, len(pool) - 1, [])
    return tuple(sorted(out))


def enumerate_trees(max_order: int) -> list[list[RootedTree]]:
    """All rooted trees of order 1..max_order, grouped by order.

    ``result[p - 1]`` holds the trees with exactly ``p`` vertices in a fixed
    deterministic order.
    """
    if not isinstance(max_order, (int, np.integer)) or not 1 <= max_order <= MAX_ORDER:
        raise ValueError(f"max_order must be an integer in [1, {MAX_ORDER}], got {max_order!r}")
    return [list(_trees_of_order(p)) for p in range(1, int(max_order) + 1)]


def trees_of_order(p: int) -> list[RootedTree]:
    return enumerate_trees(p)[-1]


def gamma(t: RootedTree) -> int:
    """Density: order(t) times the product of the children's densities."""
    g = t.order
    for kid in t.children:
        g *= gamma(kid)
    return g


def sigma(t: RootedTree) -> int:
    """Order of the symmetry group of ``t``."""
    s = 1
    for kid, m in Counter(t.children).items():
        s *= sigma(kid) ** m * math.factorial(m)
    return s


def elementary_weight(A: np.ndarray, t: RootedTree, _memo: dict | None = None) -> np.ndarray:
    """Elementary weight vector Phi(t) of an s-stage tableau.

    Phi of a single vertex is the all-ones vector; otherwise it is the
    element-wise product of ``A @ Phi(child)`` over the children.
    """
    A = np.asarray(A, dtype=float)
    memo = {} if _memo is None else _memo
    if t in memo:
        return memo[t]
    phi = np.ones(A.shape[0])
    for kid in t.children:
        phi = phi * (A @ elementary_weight(A, kid, memo))
    memo[t] = phi
    return phi


def weight_matrix(A: np.ndarray, trees: Sequence[RootedTree]) -> np.ndarray:
    """Stack Phi(t) for ``trees`` as rows (len(trees) x s)."""
    memo: dict = {}
    return np.array([elementary_weight(A, t, memo) for t in trees])


def _weights_vector(x, s: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (s,):
        raise ValueError(f"weight vector has shape {x.shape}, tableau has {s} stages")
    return x


def _matrix_of(tableau) -> np.ndarray:
    return np.asarray(getattr(tableau, "A", tableau), dtype=float)


def tau(t: RootedTree, x, theta: float, tableau) -> float:
    """Scaled residual (x . Phi(t) - theta**p / gamma(t)) / sigma(t)."""
    A = _matrix_of(tableau)
    x = _weights_vector(x, A.shape[0])
    return (x @ elementary_weight(A, t) - theta ** t.order / t.gamma) / t.sigma


def tau_vector(x, theta: float, p: int, tableau) -> np.ndarray:
    """tau for every tree of order exactly ``p``, in enumeration order."""
    A = _matrix_of(tableau)
    x = _weights_vector(x, A.shape[0])
    trees = trees_of_order(p)
    W = weight_matrix(A, trees)
    g = np.array([t.gamma for t in trees], dtype=float)
    s = np.array([t.sigma for t in trees], dtype=float)
    return (W @ x - theta**p / g) / s


def T_p(x, theta: float, p: int, tableau) -> float:
    """Root-sum-square of tau over all trees of order ``p``."""
    return float(np.sqrt(np.sum(tau_vector(x, theta, p, tableau) ** 2)))


def otter_counts(n: int) -> list[int]:
    """Number of rooted trees of order 1..n from the classical recurrence."""
    a = [0, 1]
    for m in range(1, n):
        total = 0
        for k in range(1, m + 1):
            sk = sum(d * a[d] for d in range(1, k + 1) if k % d == 0)
            total += sk * a[m - k + 1]
        a.append(total // m)
    return a[1 : n + 1]


class TreeTable:
    """All trees up to ``max_order`` flattened for the elementary-weight kernel.

    Trees are listed order by order; every child precedes its parent, so a
    single forward sweep computes all Phi vectors.
    """

    def __init__(self, max_order: int):
        groups = enumerate_trees(max_order)
        self.max_order = max_order
        self.trees: list[RootedTree] = [t for g in groups for t in g]
        index = {t: i for i, t in enumerate(self.trees)}
        ptr = [0]
        idx: list[int] = []
        for t in self.trees:
            idx.extend(index[k] for k in t.children)
            ptr.append(len(idx))
        self.child_ptr = np.array(ptr, dtype=np.int64)
        self.child_idx = np.array(idx, dtype=np.int64)
        self.order = np.array([t.order for t in self.trees])
        self.gamma = np.array([t.gamma for t in self.trees], dtype=float)
        self.sigma = np.array([t.sigma for t in self.trees], dtype=float)
        self.slices = {}
        start = 0
        for p, g in enumerate(groups, start=1):
            self.slices[p] = slice(start, start + len(g))
            start += len(g)

    def weights(self, A: np.ndarray) -> np.ndarray:
        """Phi(t) for every tree in the table, one row per tree."""
        from ._kernels import elementary_weights

        return elementary_weights(np.ascontiguousarray(A, dtype=float), self.child_ptr, self.child_idx)


@lru_cache(maxsize=None)
def tree_table(max_order: int) -> TreeTable:
    return TreeTable(max_order)
