"""Multi-start Nelder-Mead search over the 11 family parameters."""
from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from .errors import RkforgeError
from .metrics import GRID_POINTS, THETA_TOL, error_profile_poly, endpoint_error, pair_report
from .tableau import ContinuousPair, FamilyParams, construct_family, family_checks, family_core
from .rooted_trees import tree_table
from . import _kernels

# Search box: c2, then c4..c8, then the five free coefficients.
LOWER = np.array([0.02] + [0.1] * 5 + [-3.0] * 5)
UPPER = np.array([0.2] + [1.0] * 5 + [3.0] * 5)
# Initial simplex size per restart round, relative to the box; each round
# gets an equal share of the remaining budget.
RESTART_STEPS = (0.2, 0.05, 0.01)
PAIR_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class ObjectiveSpec:
    """Objective ``A``: max_theta T6 + w_V V + w_a sum(4 a^2 + a^4).

    Objective ``B``: T6 + penalty * max(0, T7 - rho T6)^2.
    """

    kind: str = "A"
    w_V: float = 1e-4
    w_a: float = 1e-7
    rho: float = 10.0
    penalty: float = 1e6

    def __post_init__(self):
        kind = self.kind.upper()
        if kind not in ("A", "B"):
            raise ValueError(f"objective kind must be A or B, got {self.kind!r}")
        if min(self.w_V, self.w_a, self.penalty) < 0 or self.rho <= 0:
            raise ValueError("weights must be nonnegative and rho positive")
        object.__setattr__(self, "kind", kind)

    def __call__(self, params) -> float:
        return evaluate(self, params)


def _as_params(params) -> FamilyParams:
    return params if isinstance(params, FamilyParams) else FamilyParams.from_array(params)


def _endpoint_norm(W, gamma, sigma) -> float:
    return float(np.linalg.norm((W - 1.0 / gamma) / sigma))


def evaluate_full(spec: ObjectiveSpec, params) -> tuple[float, bool]:
    """``(value, feasible)``; feasible means constructible and, for B, T7 <= rho T6."""
    try:
        p = _as_params(params)
        p.validate()
        core = family_core(p)
    except (RkforgeError, ValueError, ZeroDivisionError, FloatingPointError):
        return np.inf, False
    A = core.A
    feasible = True
    if spec.kind == "A":
        tt = tree_table(6)
        W6 = tt.weights(A)[tt.slices[6]]
        coef = error_profile_poly(A, core.B, 6, W6)
        _, m2 = _kernels.poly_max(coef, GRID_POINTS, THETA_TOL)
        V, _ = _kernels.variation(core.B)
        a2 = A * A
        val = np.sqrt(max(m2, 0.0)) + spec.w_V * V + spec.w_a * float(np.sum(4.0 * a2 + a2 * a2))
    else:
        tt = tree_table(7)
        W = tt.weights(A) @ core.b
        s6, s7 = tt.slices[6], tt.slices[7]
        T6 = _endpoint_norm(W[s6], tt.gamma[s6], tt.sigma[s6])
        T7 = _endpoint_norm(W[s7], tt.gamma[s7], tt.sigma[s7])
        excess = max(0.0, T7 - spec.rho * T6)
        feasible = excess == 0.0
        val = T6 + spec.penalty * excess**2
    if not np.isfinite(val):
        return np.inf, False
    return float(val), feasible


def evaluate(spec: ObjectiveSpec, params) -> float:
    """Objective value, or +inf when the family cannot be built."""
    return evaluate_full(spec, params)[0]


def objective_a(params, spec: ObjectiveSpec | None = None) -> float:
    return evaluate(spec or ObjectiveSpec("A"), params)


def objective_b(params, spec: ObjectiveSpec | None = None) -> float:
    return evaluate(spec or ObjectiveSpec("B"), params)


def latin_starts(n: int, seed: int) -> np.ndarray:
    """``n`` Latin-hypercube points in the box with c4..c8 sorted ascending."""
    X = qmc.scale(qmc.LatinHypercube(d=11, seed=seed).random(n), LOWER, UPPER)
    X[:, 1:6] = np.sort(X[:, 1:6], axis=1)
    return X


class _Budget(Exception):
    pass


def _local_search(spec: ObjectiveSpec, x0: np.ndarray, budget: int) -> tuple[np.ndarray, float, list]:
    """Nelder-Mead with shrinking restarts; returns (best feasible x, value, trace).

    Each round restarts from the best feasible point so far.
    """
    trace: list[tuple[float, bool]] = []
    best = [np.array(x0, dtype=float), np.inf]

    def f(x):
        if len(trace) >= budget:
            raise _Budget
        v, ok = evaluate_full(spec, x)
        trace.append((v, ok))
        # the descent follows the penalized value; only feasible points are kept
        if ok and v < best[1]:
            best[0], best[1] = np.array(x), v
        return v

    try:
        if not np.isfinite(f(best[0])):
            return best[0], best[1], trace
        width = UPPER - LOWER
        for r, step in enumerate(RESTART_STEPS):
            share = (budget - len(trace)) // (len(RESTART_STEPS) - r)
            if share <= 0:
                break
            x = best[0]
            simplex = np.vstack([x] + [x + step * width[k] * np.eye(11)[k] for k in range(11)])
            minimize(f, x, method="Nelder-Mead",
                     options={"initial_simplex": simplex, "maxfev": share, "adaptive": False,
                              "xatol": 1e-10, "fatol": 1e-14})
    except _Budget:
        pass
    return best[0], best[1], trace


def _run_start(args):
    spec, x0, budget = args
    return _local_search(spec, x0, budget)


@dataclass
class SearchResult:
    status: str
    value: float = np.inf
    params: FamilyParams | None = None
    pair: ContinuousPair | None = None
    report: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    n_evals: int = 0
    trace: list = field(default_factory=list)  # (start, eval, value, feasible)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def write_trace(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["start", "eval", "objective", "feasible"])
            for row in self.trace:
                w.writerow([row[0], row[1], repr(row[2]), int(row[3])])


def worker_count() -> int:
    env = os.environ.get("RKFORGE_THREADS")
    if env:
        return max(1, int(env))
    return 1


def search(spec: ObjectiveSpec, starts: int = 64, budget: int = 2000, seed: int = 0,
           x0=None, workers: int | None = None) -> SearchResult:
    """Multi-start local descent; ``budget`` counts objective evaluations per start.

    Starts are Latin-hypercube points (the optional ``x0`` replaces the
    first).  Deterministic for fixed ``seed``, ``starts`` and ``budget``.
    """
    if budget < 1 or starts < 1:
        raise ValueError("starts and budget must be positive")
    X = latin_starts(starts, seed)
    if x0 is not None:
        X[0] = _as_params(x0).as_array()
    jobs = [(spec, x, budget) for x in X]
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_start, jobs))
    else:
        results = [_run_start(j) for j in jobs]

    trace = []
    for k, (_, _, tr) in enumerate(results):
        trace.extend((k, i, v, ok) for i, (v, ok) in enumerate(tr))
    n_evals = len(trace)
    # min by value, ties broken by lexicographic parameters
    order = sorted(range(len(results)), key=lambda k: (results[k][1], tuple(results[k][0])))
    for k in order:
        x, v, _ = results[k]
        if not np.isfinite(v):
            break
        p = FamilyParams.from_array(x)
        try:
            pair = construct_family(p, name=f"objective-{spec.kind.lower()}")
        except RkforgeError:
            continue
        checks = family_checks(pair)
        if max(checks.values()) > PAIR_CHECK_TOL:
            continue
        return SearchResult("ok", v, p, pair, pair_report(pair), checks, n_evals, trace)
    return SearchResult("no feasible point", n_evals=n_evals, trace=trace)


@dataclass
class RationalizeResult:
    params: FamilyParams
    pair: ContinuousPair
    report: dict
    checks: dict
    value_before: float
    value_after: float

    @property
    def drift(self) -> float:
        return abs(self.value_after - self.value_before) / abs(self.value_before) if self.value_before else 0.0


def rationalize(params, max_denominator: int, spec: ObjectiveSpec | None = None) -> RationalizeResult:
    """Snap every parameter to its best rational approximation and rebuild the pair.

    Raises a ``FamilyError`` when the rounded parameters are degenerate.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    p = _as_params(params)
    q = FamilyParams(*[Fraction(float(getattr(p, n))).limit_denominator(max_denominator) for n in FamilyParams.names])
    q.validate()
    pair = construct_family(q)
    spec = spec or ObjectiveSpec("A")
    return RationalizeResult(q, pair, pair_report(pair), family_checks(pair), evaluate(spec, p), evaluate(spec, q))


__all__ = [
    "ObjectiveSpec",
    "SearchResult",
    "RationalizeResult",
    "evaluate",
    "evaluate_full",
    "objective_a",
    "objective_b",
    "search",
    "rationalize",
    "latin_starts",
]
