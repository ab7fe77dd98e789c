"""Quality measures of a pair: local-error norms, interpolant variation, stage errors, stability."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as P

from . import _kernels
from .tableau import ContinuousPair, Interpolant
from .rooted_trees import tree_table

GRID_POINTS = 1001
THETA_TOL = 1e-8


def _tau_values(A, x, theta, p):
    tt = tree_table(p)
    sl = tt.slices[p]
    W = tt.weights(A)[sl]
    return (W @ np.asarray(x, dtype=float) - theta**p / tt.gamma[sl]) / tt.sigma[sl]


def error_norm(A, x, theta: float, p: int) -> float:
    """T_p(x, theta) for the coefficient matrix ``A``."""
    return float(np.linalg.norm(_tau_values(np.asarray(A, dtype=float), x, theta, p)))


def endpoint_error(pair, x, p: int) -> float:
    """T_p(x, 1): endpoint local-error norm of the weights ``x``."""
    if p > 7:
        raise ValueError("orders above 7 are not supported")
    A = getattr(pair, "A", pair)
    return error_norm(A, x, 1.0, p)


def error_profile_poly(A, B, p: int, W: np.ndarray | None = None) -> np.ndarray:
    """Ascending coefficients of the polynomial T_p(beta(theta), theta)**2.

    ``W`` may carry precomputed elementary weights for the order-``p`` trees.
    """
    tt = tree_table(p)
    sl = tt.slices[p]
    if W is None:
        W = tt.weights(A)[sl]
    k = B.shape[0]
    deg = max(k, p)
    C = np.zeros((W.shape[0], deg + 1))
    C[:, 1 : k + 1] = W @ B.T
    C[:, p] -= 1.0 / tt.gamma[sl]
    C /= tt.sigma[sl][:, None]
    out = np.zeros(2 * deg + 1)
    for row in C:
        out += np.convolve(row, row)
    return out


def error_profile(pair: ContinuousPair, p: int, thetas) -> np.ndarray:
    """T_p(beta(theta), theta) on the given thetas."""
    coef = error_profile_poly(pair.A, pair.interpolant.B, p)
    vals = P.polyval(np.asarray(thetas, dtype=float), coef)
    return np.sqrt(np.maximum(vals, 0.0))


def continuous_error_max(pair: ContinuousPair, p: int = 6) -> tuple[float, float]:
    """Maximum over theta in [0, 1] of T_p(beta(theta), theta).

    Grid scan on 1001 points followed by golden-section refinement; returns
    ``(theta_star, value)``.
    """
    if pair.interpolant is None:
        raise ValueError("pair has no interpolant")
    coef = error_profile_poly(pair.A, pair.interpolant.B, p)
    th, v = _kernels.poly_max(coef, GRID_POINTS, THETA_TOL)
    return float(th), float(np.sqrt(max(v, 0.0)))


def variation(interp: Interpolant) -> tuple[float, float]:
    """Exact total variation V and negative variation N of the interpolant."""
    B = getattr(interp, "B", interp)
    V, N = _kernels.variation(np.asarray(B, dtype=float))
    return float(V), float(N)


def total_variation(interp: Interpolant) -> float:
    return variation(interp)[0]


def negativity(interp: Interpolant) -> float:
    return variation(interp)[1]


def stage_error(tableau, i: int, p: int = 3) -> float:
    """T_p(a_i*, c_i): how well stage ``i`` (1-based) approximates the solution."""
    s = tableau.s
    if not 1 <= i <= s:
        raise ValueError(f"stage index {i} out of range 1..{s}")
    return error_norm(tableau.A, tableau.A[i - 1], float(tableau.c[i - 1]), p)


def max_abs_coefficient(tableau) -> float:
    return float(np.max(np.abs(tableau.A)))


@dataclass(frozen=True)
class StabilityPolynomial:
    """R(z) = sum_k coefficients[k] z**k."""

    coefficients: np.ndarray

    def __call__(self, z):
        return P.polyval(np.asarray(z), self.coefficients)

    @property
    def degree(self) -> int:
        nz = np.nonzero(np.abs(self.coefficients) > 1e-15)[0]
        return int(nz[-1]) if len(nz) else 0

    def matches_exponential_through(self) -> int:
        """Largest k with r_j = 1/j! for all j <= k (tolerance 1e-12)."""
        k = -1
        for j, r in enumerate(self.coefficients):
            if abs(r - 1.0 / factorial(j)) > 1e-12:
                break
            k = j
        return k


def stability_polynomial(tableau, x=None) -> StabilityPolynomial:
    """r_0 = 1, r_k = x A^(k-1) 1 for k = 1..s."""
    A = np.asarray(tableau.A, dtype=float)
    x = tableau.b if x is None else np.asarray(x, dtype=float)
    s = A.shape[0]
    r = np.zeros(s + 1)
    r[0] = 1.0
    v = np.ones(s)
    for k in range(1, s + 1):
        r[k] = x @ v
        v = A @ v
    return StabilityPolynomial(r)


def stability_region(poly: StabilityPolynomial, scale: float, window, resolution: int = 401) -> list[np.ndarray]:
    """Boundary |R(scale * z)| = 1 inside ``window = (re0, re1, im0, im1)``.

    Marching squares on a ``resolution``-point grid per axis; returns complex
    polylines.
    """
    from skimage.measure import find_contours

    if scale <= 0:
        raise ValueError("scale must be positive")
    re0, re1, im0, im1 = map(float, window)
    if not (re1 > re0 and im1 > im0):
        raise ValueError("empty window")
    xs = np.linspace(re0, re1, resolution)
    ys = np.linspace(im0, im1, resolution)
    Z = xs[None, :] + 1j * ys[:, None]
    F = np.abs(poly(scale * Z)) - 1.0
    lines = []
    for path in find_contours(F, 0.0):
        rows, cols = path[:, 0], path[:, 1]
        re = re0 + cols * (re1 - re0) / (resolution - 1)
        im = im0 + rows * (im1 - im0) / (resolution - 1)
        lines.append(re + 1j * im)
    return lines


def pair_report(pair: ContinuousPair) -> dict[str, float]:
    """The comparison columns: endpoint T5/T6/T7, max over theta of T6, max|a_ij|, V."""
    out = {
        "T5": endpoint_error(pair, pair.b, 5),
        "T6": endpoint_error(pair, pair.b, 6),
        "T7": endpoint_error(pair, pair.b, 7),
    }
    if pair.interpolant is not None:
        out["max_T6_theta"] = continuous_error_max(pair, 6)[1]
        out["V"] = total_variation(pair.interpolant)
    out["max_abs_a"] = max_abs_coefficient(pair.tableau)
    return out
