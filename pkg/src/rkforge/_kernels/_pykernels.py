"""Pure-Python/numpy implementations of the hot kernels.

Every function here has a twin of the same name and signature in
``_ckernels.pyx``; the two must agree to rounding.
"""
import math

import numpy as np

# (row, col) pairs, 1-based, of the free sub-diagonal block
_S = ((6, 5), (7, 5), (8, 5), (7, 6), (8, 6), (8, 7))
_NODE_SET = (1, 4, 5, 6, 7, 8)


def a85_residual(c, A):
    """Residual of the scalar equation that forces b_9 = 0 (affine in a_85)."""
    c4 = c[3]
    c5 = c[4]
    h = {}
    for i, j in _S:
        den = 1.0
        for k in _NODE_SET:
            if k != i:
                den *= c[i - 1] - c[k - 1]
        cj = c[j - 1]
        h[i, j] = A[i - 1, j - 1] * cj * (cj - c4) / den

    def zf(m):
        cm = c[m - 1]
        return (12.0 - 15.0 * c4 - 15.0 * c5 - 15.0 * cm + 20.0 * c4 * c5
                + 20.0 * c4 * cm + 20.0 * c5 * cm - 30.0 * c4 * c5 * cm)

    lhs = 0.0
    for i, j in _S:
        cj = c[j - 1]
        lhs += (3.0 - 5.0 * c4 - 5.0 * cj + 10.0 * c4 * cj) * h[i, j]
    rhs = 0.0
    for n, (i, j) in enumerate(_S):
        for k, l in _S[n + 1:]:
            if i == k or j == l:
                continue
            rhs += ((c[i - 1] - c[k - 1]) * (c[j - 1] - c[l - 1])
                    * zf(21 - i - k) * h[i, j] * h[k, l])
    return lhs - rhs


def fill_rows(c, A):
    """Fill columns 1-4 of rows 2-8 in place from the free block and nodes."""
    c2, c3, c4 = c[1], c[2], c[3]
    for i in range(4, 9):
        ci = c[i - 1]
        s4 = 0.0
        s3 = 0.0
        for j in range(5, i):
            cj = c[j - 1]
            aij = A[i - 1, j - 1]
            s4 += aij * cj * (cj - c3)
            s3 += aij * cj * (cj - c4)
        A[i - 1, 3] = (ci * ci * (ci - c4) - 3.0 * s4) / (c4 * c4)
        A[i - 1, 2] = (ci * ci * (c4 - 2.0 * ci / 3.0) + 2.0 * s3) / (c3 * c3)
    A[2, 1] = c3 * c3 / (2.0 * c2)
    for i in range(1, 8):
        A[i, 0] = c[i] - A[i, 1:i].sum()
    return A


def elementary_weights(A, child_ptr, child_idx):
    """Phi for a topologically ordered tree table (children before parents).

    Tree ``t`` has children ``child_idx[child_ptr[t]:child_ptr[t + 1]]``.
    """
    ntrees = len(child_ptr) - 1
    W = np.ones((ntrees, A.shape[0]))
    for t in range(ntrees):
        for k in range(child_ptr[t], child_ptr[t + 1]):
            W[t] *= A @ W[child_idx[k]]
    return W


def _horner(coef, x):
    acc = 0.0
    for a in reversed(coef):
        acc = acc * x + a
    return acc


def _roots_in_unit(coef, tol):
    """Sorted real roots in the open interval (0, 1) of sum(coef[k] x**k)."""
    coef = list(coef)
    while coef and coef[-1] == 0.0:
        coef.pop()
    if len(coef) <= 1:
        return []
    if len(coef) == 2:
        r = -coef[0] / coef[1]
        return [r] if 0.0 < r < 1.0 else []
    # critical points split [0, 1] into monotone pieces
    deriv = [k * coef[k] for k in range(1, len(coef))]
    knots = [0.0] + _roots_in_unit(deriv, tol) + [1.0]
    roots = []
    for lo, hi in zip(knots[:-1], knots[1:]):
        flo = _horner(coef, lo)
        fhi = _horner(coef, hi)
        if flo == 0.0:
            if lo > 0.0 and (not roots or roots[-1] != lo):
                roots.append(lo)
            continue
        if flo * fhi > 0.0:
            continue
        a, b = lo, hi
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = _horner(coef, m)
            if fm == 0.0:
                a = b = m
                break
            if (fm > 0.0) == (flo > 0.0):
                a = m
            else:
                b = m
        r = 0.5 * (a + b)
        if 0.0 < r < 1.0:
            roots.append(r)
    return roots


def variation(B, tol=1e-14):
    """Total variation and negative variation of theta -> [theta..theta^k] @ B on [0, 1].

    Returns ``(V, N)``.  Each column's derivative is split at its real roots
    so the integrals of |beta'| are exact differences of beta.
    """
    B = np.asarray(B, dtype=float)
    k, s = B.shape
    V = 0.0
    N = 0.0
    for j in range(s):
        col = [0.0] + [float(x) for x in B[:, j]]
        deriv = [m * col[m] for m in range(1, k + 1)]
        knots = [0.0] + _roots_in_unit(deriv, tol) + [1.0]
        vals = [_horner(col, x) for x in knots]
        for v0, v1 in zip(vals[:-1], vals[1:]):
            d = v1 - v0
            V += abs(d)
            if d < 0.0:
                N -= d
    return V, N


def rk_step(f, t, x, h, A, c, b, D, F1, fsal):
    """One explicit RK step.

    Returns ``(x_next, K, E, nfev)`` where ``K`` holds the stage derivatives
    row-wise and ``E[m]`` is the l2 norm of ``h * D[m] @ K``.  ``fsal`` is the
    0-based stage whose position equals the update, or -1.
    """
    s = len(c)
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    K = np.empty((s, n))
    nfev = 0
    if F1 is None:
        K[0] = f(t, x)
        nfev += 1
    else:
        K[0] = F1
    x_next = None
    for i in range(1, s):
        Xi = x + h * (A[i, :i] @ K[:i])
        if i == fsal:
            x_next = Xi
        K[i] = f(t + c[i] * h, Xi)
        nfev += 1
    if x_next is None:
        x_next = x + h * (b @ K)
    if len(D):
        E = np.sqrt(np.sum((h * (D @ K)) ** 2, axis=1))
    else:
        E = np.zeros(0)
    return x_next, K, E, nfev


def poly_max(coef, grid_n, tol):
    """Maximum of a polynomial (ascending coefficients) on [0, 1].

    Dense grid scan, then golden-section refinement around the best cell.
    Returns ``(x_star, value)``.
    """
    xs = np.linspace(0.0, 1.0, grid_n)
    vals = np.polynomial.polynomial.polyval(xs, coef)
    i = int(np.argmax(vals))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, grid_n - 1)]
    best_x = xs[i]
    best_v = vals[i]
    coef = [float(a) for a in coef]
    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - g * (b - a)
    x2 = a + g * (b - a)
    f1 = _horner(coef, x1)
    f2 = _horner(coef, x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - g * (b - a)
            f1 = _horner(coef, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + g * (b - a)
            f2 = _horner(coef, x2)
    xm = 0.5 * (a + b)
    fm = _horner(coef, xm)
    if fm > best_v:
        return xm, fm
    return float(best_x), float(best_v)
