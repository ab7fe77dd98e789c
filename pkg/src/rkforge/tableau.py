"""Butcher tableaux, interpolants and the 11-parameter family of continuous (4,5) pairs.

Stage indices in the public API (``u``, ``stage_error(i)``, the family
parameter names) are 1-based, matching the usual tableau notation; arrays are
0-based as always.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import (
    ConsistencyError,
    DegenerateFamilyError,
    NoErrorEstimatorError,
    SingularFamilyError,
)
from .rooted_trees import RootedTree, tree_table

ROW_SUM_TOL = 1e-12
# Level of T_5(b + d) the step-size controller vectors are scaled to.
ESTIMATOR_T5 = 1e-3
# Coefficient growth beyond this marks a near-degenerate parameter set:
# order conditions can no longer be met to 1e-9 in double precision.
COEFF_LIMIT = 1e3
# Free sub-diagonal block of the family, 1-based (row, col)
FREE_BLOCK = ((6, 5), (7, 5), (8, 5), (7, 6), (8, 6), (8, 7))


def _frac_array(values) -> np.ndarray:
    return np.array([float(Fraction(v)) for v in values], dtype=float)


@dataclass(frozen=True, eq=False)
class ButcherTableau:
    """Explicit Runge-Kutta scheme ``(A, b, c)`` with optional FSAL stage ``u`` (1-based)."""

    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    u: int | None = None
    exact: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        b = np.array(self.b, dtype=float)
        c = np.array(self.c, dtype=float)
        s = len(c)
        if A.shape != (s, s) or b.shape != (s,):
            raise ValueError(f"inconsistent shapes A{A.shape}, b{b.shape}, c{c.shape}")
        if np.any(np.triu(A) != 0.0):
            raise ValueError("A must be strictly lower triangular")
        # relative to the row magnitude: large-coefficient rows cancel
        mag = np.maximum(1.0, np.abs(A).sum(axis=1))
        dev = np.max(np.abs(A.sum(axis=1) - c) / mag)
        if dev > ROW_SUM_TOL:
            raise ValueError(f"row sums of A differ from c by {dev:.3e}")
        if self.u is not None:
            u = int(self.u)
            if not 1 <= u <= s:
                raise ValueError(f"FSAL stage {u} out of range 1..{s}")
            if abs(c[u - 1] - 1.0) > ROW_SUM_TOL or np.max(np.abs(A[u - 1] - b)) > ROW_SUM_TOL * mag[u - 1]:
                raise ValueError(f"stage {u} is not a FSAL stage (c_u = 1, row u = b)")
            object.__setattr__(self, "u", u)
        for name, arr in (("A", A), ("b", b), ("c", c)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def s(self) -> int:
        return len(self.c)

    @property
    def fsal_index(self) -> int:
        """0-based FSAL stage, or -1."""
        return -1 if self.u is None else self.u - 1

    @classmethod
    def from_rationals(cls, A_rows: Sequence[Sequence], b: Sequence, c: Sequence, u: int | None = None):
        """Build from exact entries (Fractions, ints or ``"p/q"`` strings); lower rows may be ragged."""
        s = len(c)
        Aq = [[Fraction(0)] * s for _ in range(s)]
        for i, row in enumerate(A_rows):
            for j, v in enumerate(row):
                Aq[i][j] = Fraction(v)
        bq = [Fraction(v) for v in b]
        cq = [Fraction(v) for v in c]
        A = np.array([[float(v) for v in row] for row in Aq])
        return cls(A, _frac_array(bq), _frac_array(cq), u, exact={"A": Aq, "b": bq, "c": cq})

    def with_weights(self, b) -> ButcherTableau:
        return ButcherTableau(self.A, b, self.c, None)


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Continuous weights beta_j(theta) = sum_{m=1..k} B[m-1, j] theta**m."""

    B: np.ndarray

    def __post_init__(self):
        B = np.array(self.B, dtype=float)
        if B.ndim != 2:
            raise ValueError("B must be a k x s matrix")
        B.setflags(write=False)
        object.__setattr__(self, "B", B)

    @property
    def degree(self) -> int:
        return self.B.shape[0]

    def __call__(self, theta):
        """beta(theta); an array of thetas gives one row per theta."""
        theta = np.asarray(theta, dtype=float)
        acc = np.zeros(theta.shape + (self.B.shape[1],))
        for row in self.B[::-1]:
            acc = (acc + row) * theta[..., None]
        return acc

    def derivative(self, theta):
        theta = np.asarray(theta, dtype=float)
        k = self.degree
        acc = np.zeros(theta.shape + (self.B.shape[1],))
        for m in range(k, 0, -1):
            acc = acc * theta[..., None] + m * self.B[m - 1]
        return acc


@dataclass(frozen=True, eq=False)
class ContinuousPair:
    """Tableau, interpolant and the difference vectors used for error control.

    ``d_basis`` rows are ordered fewer-late-stages first; ``b + d`` is an
    order-4 method for every row ``d``.
    """

    tableau: ButcherTableau
    interpolant: Interpolant | None
    d_basis: np.ndarray
    orders: tuple[int, int] = (4, 5)
    name: str = ""
    params: FamilyParams | None = None

    def __post_init__(self):
        D = np.array(self.d_basis, dtype=float).reshape(-1, self.tableau.s)
        D.setflags(write=False)
        object.__setattr__(self, "d_basis", D)
        if self.interpolant is not None and self.interpolant.B.shape[1] != self.tableau.s:
            raise ValueError("interpolant width does not match stage count")

    A = property(lambda self: self.tableau.A)
    b = property(lambda self: self.tableau.b)
    c = property(lambda self: self.tableau.c)
    s = property(lambda self: self.tableau.s)
    u = property(lambda self: self.tableau.u)


_PARAM_NAMES = ("c2", "c4", "c5", "c6", "c7", "c8", "a65", "a75", "a76", "a86", "a87")


@dataclass(frozen=True)
class FamilyParams:
    """The 11 free parameters of the family."""

    c2: float
    c4: float
    c5: float
    c6: float
    c7: float
    c8: float
    a65: float
    a75: float
    a76: float
    a86: float
    a87: float

    names = _PARAM_NAMES

    def as_array(self) -> np.ndarray:
        return np.array([float(getattr(self, n)) for n in _PARAM_NAMES])

    @classmethod
    def from_array(cls, values) -> FamilyParams:
        values = list(values)
        if len(values) != 11:
            raise ValueError(f"expected 11 parameters, got {len(values)}")
        return cls(*values)

    def nodes(self) -> np.ndarray:
        """Full node vector c_1..c_9."""
        c4 = float(self.c4)
        return np.array([0.0, float(self.c2), 2.0 * c4 / 3.0, c4, float(self.c5),
                         float(self.c6), float(self.c7), float(self.c8), 1.0])

    def validate(self) -> None:
        vals = self.as_array()
        if not np.all(np.isfinite(vals)):
            raise DegenerateFamilyError("non-finite parameter")
        nodes = [0.0, self.c2, self.c4, self.c5, self.c6, self.c7, self.c8]
        if any(not 0.0 < float(v) <= 1.0 for v in nodes[1:]):
            raise DegenerateFamilyError("degenerate family: nodes must lie in (0, 1]")
        key = [0.0] + [float(v) for v in nodes[2:]]
        if len(set(key)) != len(key):
            raise DegenerateFamilyError("degenerate family: nodes 0, c4..c8 must be pairwise distinct")


# --- q vectors and family construction --------------------------------------


def q_vector(tableau, n: int) -> np.ndarray:
    """q_n = A c^n - c^(n+1) / (n + 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    A = np.asarray(getattr(tableau, "A", tableau), dtype=float)
    c = A.sum(axis=1) if not hasattr(tableau, "c") else np.asarray(tableau.c)
    return A @ c**n - c ** (n + 1) / (n + 1)


@dataclass
class FamilyCore:
    c: np.ndarray
    A: np.ndarray
    B: np.ndarray
    b: np.ndarray
    a85_residuals: tuple[float, float, float]
    affinity_defect: float


def family_core(p: FamilyParams, coeff_limit: float = COEFF_LIMIT) -> FamilyCore:
    """Nodes, full A (row 9 = b) and interpolant matrix, without the d vectors.

    This is the fast path used by the optimizer; ``construct_family`` wraps it
    with verification and the error-estimator basis.
    """
    p.validate()
    c = p.nodes()
    A = np.zeros((9, 9))
    for (i, j), name in zip(((6, 5), (7, 5), (7, 6), (8, 6), (8, 7)), ("a65", "a75", "a76", "a86", "a87")):
        A[i - 1, j - 1] = float(getattr(p, name))
    # the residual is affine in a85; two samples fix it, a third checks it
    rs = []
    for trial in (0.0, 1.0, 2.0):
        A[7, 4] = trial
        rs.append(float(_kernels.a85_residual(c, A)))
    r0, r1, r2 = rs
    slope = r1 - r0
    scale = max(abs(r0), abs(r1), abs(r2), 1e-300)
    if not np.isfinite(scale) or slope == 0.0 or abs(slope) <= 1e-14 * scale:
        raise DegenerateFamilyError("degenerate family: the a85 equation has no unique solution")
    defect = abs(r2 - 2.0 * r1 + r0) / scale
    if defect > 1e-9:
        raise ConsistencyError(f"a85 residual is not affine (relative defect {defect:.3e})")
    A[7, 4] = -r0 / slope
    _kernels.fill_rows(c, A)
    if not np.all(np.isfinite(A)):
        raise DegenerateFamilyError("degenerate family: infinite coefficients")
    interp, b = build_interpolant(A, c)
    amax = max(float(np.max(np.abs(A))), float(np.max(np.abs(b))))
    if amax > coeff_limit:
        raise DegenerateFamilyError(f"near-degenerate family: max |a_ij| = {amax:.3g} exceeds {coeff_limit:g}")
    if abs(b[8]) > 1e-10:
        # only near-coinciding nodes get here: the b9 equation is solved exactly
        raise SingularFamilyError(f"ill-conditioned family: b_9 = {b[8]:.3e} instead of 0")
    b = b.copy()
    b[8] = 0.0
    b[0] = 1.0 - b[1:].sum()
    A[8] = b
    return FamilyCore(c, A, interp.B, b, (r0, r1, r2), defect)


def build_interpolant(A, c) -> tuple[Interpolant, np.ndarray]:
    """Order-5 C^1 interpolant of a 9-stage scheme from rows 1-8 of ``A``.

    Returns the interpolant and the implied weights ``b`` (column sums of B).
    """
    A = np.array(A, dtype=float)
    c = np.asarray(c, dtype=float)
    A[8] = 0.0
    q1 = A @ c - c**2 / 2
    q1[8] = 0.0
    Aq1 = A @ q1
    Aq1[8] = 0.0
    A2q1 = A @ Aq1
    A2q1[8] = 0.0
    q3 = A @ c**3 - c**4 / 4
    q3[8] = 0.0
    M = np.column_stack([np.ones(9), c, c**2, c**3, c**4, q1, Aq1, A2q1, q3])
    if not np.all(np.isfinite(M)):
        raise SingularFamilyError("singular family: non-finite interpolant matrix")
    try:
        Minv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise SingularFamilyError("singular family: interpolant matrix is singular") from exc
    cond = np.linalg.norm(M, 1) * np.linalg.norm(Minv, 1)
    if not np.isfinite(cond) or cond > 1e13:
        raise SingularFamilyError(f"singular family: interpolant matrix condition {cond:.2e}")
    B = Minv[:5] / np.arange(1, 6)[:, None]
    slope_end = Minv[:5].sum(axis=0)
    e9 = np.zeros(9)
    e9[8] = 1.0
    if np.max(np.abs(slope_end - e9)) > 1e-10:
        raise ConsistencyError("interpolant slope at theta = 1 is not the FSAL unit vector")
    return Interpolant(B), B.sum(axis=0)


def construct_family(
    p: FamilyParams,
    estimator_t5: float | None = ESTIMATOR_T5,
    name: str = "",
    coeff_limit: float = COEFF_LIMIT,
) -> ContinuousPair:
    """Build the continuous (4,5) pair for the 11 parameters ``p``.

    Raises a ``FamilyError`` subclass for degenerate or numerically
    near-degenerate parameters.  ``estimator_t5`` sets the scale of the
    controller's difference vectors (see ``scale_estimators``); ``None``
    keeps them at unit max entry.
    """
    core = family_core(p, coeff_limit)
    tab = ButcherTableau(core.A, core.b, core.c, u=9)
    pair = ContinuousPair(tab, Interpolant(core.B), np.zeros((0, 9)), (4, 5), name=name, params=p)
    D = derive_error_weights(pair)
    if estimator_t5 is not None:
        D = scale_estimators(tab, D, estimator_t5)
    high = 6 if verify_order(tab, tab.b, 6).max_residual < 1e-12 else 5
    return dataclasses.replace(pair, d_basis=D, orders=(4, high))


# --- error-estimator vectors ------------------------------------------------


def _order_rows(A: np.ndarray, max_order: int) -> np.ndarray:
    tt = tree_table(max_order)
    return tt.weights(A)


def derive_error_weights(pair, rank_tol: float = 1e-10) -> np.ndarray:
    """Basis of difference vectors ``d`` with ``b + d`` of order exactly 4.

    Rows are sorted so vectors supported on fewer late stages come first,
    orthonormalized in that order and then scaled to unit max-magnitude entry.
    Vectors that also satisfy all order-5 conditions (to 1e-6) are dropped.
    """
    tab = getattr(pair, "tableau", pair)
    A = tab.A
    s = tab.s
    W = _order_rows(A, 4)
    _, sv, Vt = np.linalg.svd(W)
    rank = int(np.sum(sv > rank_tol * sv[0]))
    N = Vt[rank:]
    if N.shape[0] == 0:
        raise NoErrorEstimatorError("no error estimator: order-4 conditions have full rank")
    # echelon form with stages scanned from last to first: later rows end earlier
    R = N[:, ::-1].copy()
    row = 0
    for col in range(s):
        if row == R.shape[0]:
            break
        piv = row + int(np.argmax(np.abs(R[row:, col])))
        if abs(R[piv, col]) < rank_tol:
            continue
        R[[row, piv]] = R[[piv, row]]
        R[row] /= R[row, col]
        for r in range(R.shape[0]):
            if r != row:
                R[r] -= R[r, col] * R[row]
        row += 1
    basis = R[::-1, ::-1]
    # clean roundoff below the support of each vector
    out = []
    for v in basis:
        w = v.copy()
        for u in out:
            w -= (w @ u) * u
        w /= np.linalg.norm(w)
        out.append(w)
    D = np.array(out)
    D[np.abs(D) < 1e-15] = 0.0
    D /= np.max(np.abs(D), axis=1)[:, None] * np.sign(D[np.arange(len(D)), np.argmax(np.abs(D), axis=1)])[:, None]
    tt = tree_table(5)
    phi5 = _order_rows(A, 5)[tt.slices[5]]
    viol = np.max(np.abs(D @ phi5.T) / tt.sigma[tt.slices[5]], axis=1)
    # a null-space vector that also meets every order-5 condition estimates nothing
    D = D[viol >= 1e-6]
    if D.shape[0] == 0:
        raise NoErrorEstimatorError("no error estimator: every difference vector satisfies the order-5 conditions")
    return D


def support_end(d: np.ndarray, tol: float = 0.0) -> int:
    """1-based index of the last nonzero stage of ``d``."""
    nz = np.nonzero(np.abs(d) > tol)[0]
    return int(nz[-1]) + 1 if len(nz) else 0


def scale_estimators(tab: ButcherTableau, D: np.ndarray, target_t5: float) -> np.ndarray:
    """Rescale each ``d`` so that T_5(b + d) equals ``target_t5``."""
    tt = tree_table(5)
    phi5 = _order_rows(tab.A, 5)[tt.slices[5]]
    out = []
    for d in np.atleast_2d(D):
        resid_b = phi5 @ tab.b - 1.0 / tt.gamma[tt.slices[5]]
        t5_d = np.linalg.norm((phi5 @ d) / tt.sigma[tt.slices[5]])
        if np.max(np.abs(resid_b)) > 1e-9:
            raise ConsistencyError("estimator scaling assumes b has order 5")
        out.append(d * (target_t5 / t5_d))
    return np.array(out)


# --- verification -----------------------------------------------------------


@dataclass
class OrderReport:
    """Worst |tau| per order for one weight vector."""

    max_by_order: dict[int, float]
    worst_tree: dict[int, RootedTree]

    @property
    def max_residual(self) -> float:
        return max(self.max_by_order.values())

    def lines(self) -> list[str]:
        return [f"order {p}: max |tau| = {self.max_by_order[p]:.3e}  worst tree {self.worst_tree[p].bracket()}"
                for p in sorted(self.max_by_order)]


def verify_order(tableau, x, p: int, theta: float = 1.0) -> OrderReport:
    """Residuals tau(t, x, theta) for every tree up to order ``p``."""
    A = np.asarray(getattr(tableau, "A", tableau), dtype=float)
    x = np.asarray(x, dtype=float)
    if x.shape != (A.shape[0],):
        raise ValueError("weight vector length does not match the tableau")
    tt = tree_table(p)
    W = tt.weights(A)
    tau = (W @ x - theta**tt.order / tt.gamma) / tt.sigma
    best: dict[int, float] = {}
    worst: dict[int, RootedTree] = {}
    for q in range(1, p + 1):
        sl = tt.slices[q]
        k = int(np.argmax(np.abs(tau[sl])))
        best[q] = float(abs(tau[sl][k]))
        worst[q] = tt.trees[sl][k]
    return OrderReport(best, worst)


def interpolant_residual(pair: ContinuousPair, thetas, p: int = 5) -> float:
    """max |tau(t, beta(theta), theta)| over trees of order <= p and the given thetas."""
    tt = tree_table(p)
    W = tt.weights(pair.A)
    out = 0.0
    for th in np.atleast_1d(thetas):
        beta = pair.interpolant(float(th))
        tau = (W @ beta - th**tt.order / tt.gamma) / tt.sigma
        out = max(out, float(np.max(np.abs(tau))))
    return out


def family_checks(pair: ContinuousPair, thetas=None) -> dict[str, float]:
    """Residuals of the structural identities a family pair must satisfy.

    Keys: row_sum, q1, Aq1, q2 (entries that must vanish), order5 (endpoint),
    interp5 (continuous order 5 over ``thetas``), c1 (end conditions), b_last,
    variation (|V - 1 - 2N|).
    """
    from .metrics import variation

    thetas = np.linspace(0.0, 1.0, 11) if thetas is None else thetas
    A, b, c, s = pair.A, pair.b, pair.c, pair.s
    q1 = q_vector(pair.tableau, 1)
    q2 = q_vector(pair.tableau, 2)
    Aq1 = A @ q1
    beta = pair.interpolant
    e1 = np.eye(s)[0]
    eu = np.eye(s)[pair.tableau.fsal_index]
    c1 = max(np.max(np.abs(beta(0.0))), np.max(np.abs(beta.derivative(0.0) - e1)),
             np.max(np.abs(beta(1.0) - b)), np.max(np.abs(beta.derivative(1.0) - eu)))
    V, N = variation(beta)
    return {
        "row_sum": float(np.max(np.abs(A.sum(axis=1) - c))),
        "q1": float(np.max(np.abs(np.delete(q1, 1)))),
        "Aq1": float(np.max(np.abs(np.delete(Aq1, 2)))),
        "q2": float(np.max(np.abs(np.delete(q2, [1, 2])))),
        "order5": verify_order(pair.tableau, b, 5).max_residual,
        "interp5": interpolant_residual(pair, thetas, 5),
        "c1": float(c1),
        "b_last": float(abs(b[-1])),
        "variation": abs(V - 1.0 - 2.0 * N),
    }


# --- builtin pairs ------------------------------------------------------------

_TABLE46 = {
    "c": ["0", "1/14", "1/7", "3/14", "1/2", "9/14", "6/7", "1", "1"],
    "A": [
        [],
        ["1/14"],
        ["0", "1/7"],
        ["3/56", "0", "9/56"],
        ["29/72", "0", "-35/24", "14/9"],
        ["-17/56", "0", "93/56", "-8/7", "3/7"],
        ["199/1372", "0", "-195/196", "1259/784", "-3855/5488", "45/56"],
        ["4903/25596", "0", "4487/2844", "-255101/102384", "33847/11376", "-94325/51192", "3773/6399"],
        ["16/243", "0", "0", "16807/53460", "53/300", "2401/12150", "2401/12150", "79/1650"],
    ],
    "b": ["16/243", "0", "0", "16807/53460", "53/300", "2401/12150", "2401/12150", "79/1650", "0"],
}

_DOPRI = {
    "c": ["0", "1/5", "3/10", "4/5", "8/9", "1", "1"],
    "A": [
        [],
        ["1/5"],
        ["3/40", "9/40"],
        ["44/45", "-56/15", "32/9"],
        ["19372/6561", "-25360/2187", "64448/6561", "-212/729"],
        ["9017/3168", "-355/33", "46732/5247", "49/176", "-5103/18656"],
        ["35/384", "0", "500/1113", "125/192", "-2187/6784", "11/84"],
    ],
    "b": ["35/384", "0", "500/1113", "125/192", "-2187/6784", "11/84", "0"],
    "b4": ["5179/57600", "0", "7571/16695", "393/640", "-92097/339200", "187/2100", "1/40"],
    # continuous extension coefficients of the classical dense output
    "dense": ["-12715105075/11282082432", "0", "87487479700/32700410799", "-10690763975/1880347072",
              "701980252875/199316789632", "-1453857185/822651844", "69997945/29380423"],
}

# Family parameters that reproduce the (4,6) tableau row by row.
TABLE46_PARAMS = FamilyParams(
    Fraction(1, 14), Fraction(3, 14), Fraction(1, 2), Fraction(9, 14), Fraction(6, 7), Fraction(1),
    Fraction(3, 7), Fraction(-3855, 5488), Fraction(45, 56), Fraction(-94325, 51192), Fraction(3773, 6399),
)


def _dopri_dense_B(b, dense) -> list[list[Fraction]]:
    """Exact B of the 4th-order dense output as a 4 x 7 matrix.

    beta(theta) = theta b + theta(1-theta)(e1 - b) + theta^2 (1-theta)(2b - e1 - e7)
                  + theta^2 (1-theta)^2 d
    """
    s = 7
    e1 = [Fraction(1) if j == 0 else Fraction(0) for j in range(s)]
    e7 = [Fraction(1) if j == 6 else Fraction(0) for j in range(s)]
    B = [[Fraction(0)] * s for _ in range(4)]
    for j in range(s):
        r2, r3 = b[j], e1[j] - b[j]
        r4 = 2 * b[j] - e1[j] - e7[j]
        r5 = dense[j]
        # coefficients of theta^1..theta^4
        B[0][j] = r2 + r3
        B[1][j] = -r3 + r4 + r5
        B[2][j] = -r4 - 2 * r5
        B[3][j] = r5
    return B


def builtin(name: str) -> ContinuousPair:
    """Builtin pairs: ``table46`` (the FSAL (4,6) pair) and ``dormand_prince``."""
    key = name.lower().replace("-", "_")
    if key == "table46":
        d = _TABLE46
        tab = ButcherTableau.from_rationals(d["A"], d["b"], d["c"], u=9)
        interp, _ = build_interpolant(tab.A, tab.c)
        pair = ContinuousPair(tab, interp, np.zeros((0, 9)), (4, 6), name="table46", params=TABLE46_PARAMS)
        D = scale_estimators(tab, derive_error_weights(pair), ESTIMATOR_T5)
        return dataclasses.replace(pair, d_basis=D)
    if key in ("dormand_prince", "dopri5", "dp5"):
        d = _DOPRI
        tab = ButcherTableau.from_rationals(d["A"], d["b"], d["c"], u=7)
        bq = [Fraction(v) for v in d["b"]]
        b4 = [Fraction(v) for v in d["b4"]]
        Bq = _dopri_dense_B(bq, [Fraction(v) for v in d["dense"]])
        dq = [x - y for x, y in zip(b4, bq)]
        tab.exact["B"] = Bq
        tab.exact["d"] = [dq]
        interp = Interpolant([[float(v) for v in row] for row in Bq])
        return ContinuousPair(tab, interp, [[float(v) for v in dq]], (4, 5), name="dormand_prince")
    raise KeyError(f"unknown builtin pair {name!r}; choose from: table46, dormand_prince")


BUILTIN_NAMES = ("table46", "dormand_prince")
