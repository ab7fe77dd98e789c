"""Adaptive explicit Runge-Kutta integration with embedded error control and dense output."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .errors import IntegrationError
from .tableau import ContinuousPair

TINY_ERROR = 1e-300


@dataclass(frozen=True)
class OdeSystem:
    """dx/dt = f(t, x) with ``n`` components; ``exact`` is optional."""

    f: Callable[[float, np.ndarray], np.ndarray]
    n: int
    exact: Callable[[float], np.ndarray] | None = None
    name: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("system dimension must be at least 1")


@dataclass(frozen=True)
class SolveOptions:
    """Step-size control: h <- safety * h * (atol / E) ** exponent.

    ``h_min``/``h_max`` default to 1e-12 and 1 times the integration window.
    When every tried estimate underflows the step grows by ``growth_cap``.
    """

    atol: float = 1e-6
    h0: float = 1e-3
    safety: float = 0.9
    exponent: float = 0.2
    h_min: float | None = None
    h_max: float | None = None
    max_steps: int = 1_000_000
    growth_cap: float = 10.0

    def resolved(self, span: float) -> SolveOptions:
        h_min = 1e-12 * span if self.h_min is None else self.h_min
        h_max = span if self.h_max is None else self.h_max
        if self.atol <= 0:
            raise ValueError("atol must be positive")
        if not 0 < h_min <= h_max:
            raise ValueError("need 0 < h_min <= h_max")
        return SolveOptions(self.atol, min(max(self.h0, h_min), h_max), self.safety, self.exponent,
                            h_min, h_max, self.max_steps, self.growth_cap)


@dataclass
class StepResult:
    x_next: np.ndarray
    K: np.ndarray
    errors: np.ndarray
    nfev: int


def _rhs(system):
    return system.f if isinstance(system, OdeSystem) else system


def step(pair: ContinuousPair, system, t: float, x, h: float, F1=None, weights=None) -> StepResult:
    """One uncontrolled step of size ``h``.

    ``errors[m]`` is the l2 norm of ``h * sum_j d_m[j] F_j`` for each row of
    ``pair.d_basis``.  ``weights`` replaces ``b`` (FSAL reuse is then off).
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    tab = pair.tableau
    b = tab.b if weights is None else np.asarray(weights, dtype=float)
    fsal = tab.fsal_index if weights is None else -1
    x = np.atleast_1d(np.asarray(x, dtype=float))
    with np.errstate(all="ignore"):
        x_next, K, E, nfev = _kernels.rk_step(
            _rhs(system), float(t), x, float(h), tab.A, tab.c, b, pair.d_basis, F1, fsal
        )
    if not np.all(np.isfinite(K)):
        bad = int(np.nonzero(~np.all(np.isfinite(K), axis=1))[0][0])
        raise IntegrationError(
            f"non-finite right-hand side at stage {bad + 1} (t = {t + tab.c[bad] * h!r}, step start {t!r}, h = {h!r})"
        )
    return StepResult(np.asarray(x_next), K, E, nfev)


@dataclass
class Solution:
    """Accepted steps of a run plus counters; callable as a dense evaluator."""

    pair: ContinuousPair
    t: np.ndarray
    x: np.ndarray
    h: np.ndarray
    K: np.ndarray
    errors: list[np.ndarray] = field(default_factory=list)
    nfev: int = 0
    n_rejected: int = 0
    status: str = "success"
    message: str = ""

    @property
    def success(self) -> bool:
        return self.status == "success"

    @property
    def n_steps(self) -> int:
        return len(self.h)

    def dense_eval(self, t):
        """x(t) from the interpolant of the step containing ``t``.

        A ``t`` on a step boundary is evaluated in the earlier step.
        """
        if self.pair.interpolant is None:
            raise ValueError("pair has no interpolant")
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        lo, hi = self.t[0], self.t[-1]
        if np.any(ts < lo) or np.any(ts > hi):
            raise ValueError(f"t outside the solved window [{lo}, {hi}]")
        k = np.clip(np.searchsorted(self.t, ts, side="left") - 1, 0, self.n_steps - 1)
        theta = (ts - self.t[k]) / self.h[k]
        beta = self.pair.interpolant(theta)
        out = self.x[k] + self.h[k][:, None] * np.einsum("ms,msn->mn", beta, self.K[k])
        return out[0] if np.ndim(t) == 0 else out

    __call__ = dense_eval

    def dense_derivative(self, t, side: str = "left"):
        """dx/dt from the interpolant; ``side`` picks the step at a boundary."""
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        k = np.searchsorted(self.t, ts, side=side) - 1
        k = np.clip(k, 0, self.n_steps - 1)
        theta = (ts - self.t[k]) / self.h[k]
        dbeta = self.pair.interpolant.derivative(theta)
        out = np.einsum("ms,msn->mn", dbeta, self.K[k])
        return out[0] if np.ndim(t) == 0 else out

    def write_csv(self, path) -> None:
        """Per accepted step: t_end, h, x components, tried E values; summary comment last."""
        n = self.x.shape[1]
        m = max((len(e) for e in self.errors), default=0)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "h"] + [f"x{i}" for i in range(n)] + [f"E{i}" for i in range(m)])
            w.writerow([repr(float(self.t[0])), ""] + [repr(float(v)) for v in self.x[0]] + [""] * m)
            for k in range(self.n_steps):
                errs = [repr(float(e)) for e in self.errors[k]] + [""] * (m - len(self.errors[k]))
                w.writerow([repr(float(self.t[k + 1])), repr(float(self.h[k]))]
                           + [repr(float(v)) for v in self.x[k + 1]] + errs)
            fh.write(f"# steps={self.n_steps} rhs_evals={self.nfev} rejections={self.n_rejected} status={self.status}\n")


def _finish(pair, ts, xs, hs, Ks, errs, nfev, nrej, status="success", message=""):
    s = pair.s
    n = len(xs[0])
    return Solution(
        pair,
        np.array(ts),
        np.array(xs),
        np.array(hs),
        np.array(Ks) if Ks else np.zeros((0, s, n)),
        errs,
        nfev,
        nrej,
        status,
        message,
    )


def solve(pair: ContinuousPair, system, t0: float, x0, t_end: float, opts: SolveOptions | None = None) -> Solution:
    """Adaptive integration from ``t0`` to ``t_end``.

    Difference vectors are tried in ``pair.d_basis`` order; the first one with
    E > atol rejects the step.  The next h uses the largest E among the
    vectors tried, whether the step was accepted or not.  Rejected steps
    count their right-hand-side evaluations.
    """
    if not t_end > t0:
        raise ValueError("t_end must exceed t0")
    opts = (opts or SolveOptions()).resolved(t_end - t0)
    tab = pair.tableau
    fsal = tab.fsal_index
    f = _rhs(system)
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    t = float(t0)
    h = opts.h0
    ts, xs, hs, Ks, errs = [t], [x], [], [], []
    nfev = 0
    nrej = 0
    F1 = None
    eps_t = 4.0 * np.finfo(float).eps * max(abs(t0), abs(t_end))
    while t < t_end:
        if len(hs) + nrej >= opts.max_steps:
            return _finish(pair, ts, xs, hs, Ks, errs, nfev, nrej, "failed", f"step limit {opts.max_steps} reached at t = {t!r}")
        last = t + h >= t_end - eps_t
        h_try = t_end - t if last else h
        res = step(pair, f, t, x, h_try, F1)
        nfev += res.nfev
        tried = []
        accepted = True
        for E in res.errors:
            tried.append(float(E))
            if E > opts.atol:
                accepted = False
                break
        e_max = max(tried, default=0.0)
        factor = opts.growth_cap if e_max < TINY_ERROR else opts.safety * (opts.atol / e_max) ** opts.exponent
        h_new = min(h_try * factor, opts.h_max)
        if accepted:
            t = t_end if last else t + h_try
            x = res.x_next
            ts.append(t)
            xs.append(x)
            hs.append(h_try)
            Ks.append(res.K)
            errs.append(np.array(tried))
            F1 = res.K[fsal] if fsal >= 0 else None
        else:
            nrej += 1
            F1 = res.K[0]
        if t < t_end and h_new < opts.h_min:
            return _finish(pair, ts, xs, hs, Ks, errs, nfev, nrej, "failed", f"step size {h_new:.3e} below h_min at t = {t!r}")
        h = h_new
    return _finish(pair, ts, xs, hs, Ks, errs, nfev, nrej)


def solve_fixed(pair: ContinuousPair, system, t0: float, x0, t_end: float, n_steps: int, weights=None) -> Solution:
    """Constant step size (t_end - t0) / n_steps, no error control."""
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    h = (t_end - t0) / n_steps
    fsal = pair.tableau.fsal_index if weights is None else -1
    f = _rhs(system)
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    ts, xs, hs, Ks, errs = [float(t0)], [x], [], [], []
    nfev = 0
    F1 = None
    for k in range(n_steps):
        t = t0 + k * h
        res = step(pair, f, t, x, h, F1, weights)
        nfev += res.nfev
        x = res.x_next
        ts.append(t0 + (k + 1) * h)
        xs.append(x)
        hs.append(h)
        Ks.append(res.K)
        errs.append(res.errors)
        F1 = res.K[fsal] if fsal >= 0 else None
    return _finish(pair, ts, xs, hs, Ks, errs, nfev, 0)
