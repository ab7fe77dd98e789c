# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef int[6] _SI = [6, 7, 8, 7, 8, 8]
cdef int[6] _SJ = [5, 5, 5, 6, 6, 7]
cdef int[6] _NODES = [1, 4, 5, 6, 7, 8]


cdef inline double _zf(double c4, double c5, double cm) nogil:
    return (12.0 - 15.0 * c4 - 15.0 * c5 - 15.0 * cm + 20.0 * c4 * c5
            + 20.0 * c4 * cm + 20.0 * c5 * cm - 30.0 * c4 * c5 * cm)


def a85_residual(c_in, A_in):
    cdef const double[::1] c = np.ascontiguousarray(c_in, dtype=np.float64)
    cdef const double[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.float64)
    cdef double h[6]
    cdef double c4 = c[3], c5 = c[4], den, cj, lhs = 0.0, rhs = 0.0
    cdef int n, m, k, i, j
    for n in range(6):
        i = _SI[n]
        j = _SJ[n]
        den = 1.0
        for m in range(6):
            k = _NODES[m]
            if k != i:
                den *= c[i - 1] - c[k - 1]
        cj = c[j - 1]
        h[n] = A[i - 1, j - 1] * cj * (cj - c4) / den
        lhs += (3.0 - 5.0 * c4 - 5.0 * cj + 10.0 * c4 * cj) * h[n]
    for n in range(6):
        for m in range(n + 1, 6):
            if _SI[n] == _SI[m] or _SJ[n] == _SJ[m]:
                continue
            rhs += ((c[_SI[n] - 1] - c[_SI[m] - 1]) * (c[_SJ[n] - 1] - c[_SJ[m] - 1])
                    * _zf(c4, c5, c[21 - _SI[n] - _SI[m] - 1]) * h[n] * h[m])
    return lhs - rhs


def fill_rows(c_in, A_out):
    cdef const double[::1] c = np.ascontiguousarray(c_in, dtype=np.float64)
    cdef double[:, ::1] A = A_out
    cdef double c2 = c[1], c3 = c[2], c4 = c[3], ci, cj, s3, s4, acc
    cdef int i, j
    for i in range(4, 9):
        ci = c[i - 1]
        s4 = 0.0
        s3 = 0.0
        for j in range(5, i):
            cj = c[j - 1]
            s4 += A[i - 1, j - 1] * cj * (cj - c3)
            s3 += A[i - 1, j - 1] * cj * (cj - c4)
        A[i - 1, 3] = (ci * ci * (ci - c4) - 3.0 * s4) / (c4 * c4)
        A[i - 1, 2] = (ci * ci * (c4 - 2.0 * ci / 3.0) + 2.0 * s3) / (c3 * c3)
    A[2, 1] = c3 * c3 / (2.0 * c2)
    for i in range(1, 8):
        acc = 0.0
        for j in range(1, i):
            acc += A[i, j]
        A[i, 0] = c[i] - acc
    return A_out


def elementary_weights(A_in, child_ptr_in, child_idx_in):
    cdef const double[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.float64)
    cdef const long[::1] ptr = np.ascontiguousarray(child_ptr_in, dtype=np.int64)
    cdef const long[::1] idx = np.ascontiguousarray(child_idx_in, dtype=np.int64)
    cdef Py_ssize_t ntrees = ptr.shape[0] - 1, s = A.shape[0]
    W_arr = np.ones((ntrees, s))
    cdef double[:, ::1] W = W_arr
    cdef Py_ssize_t t, k, i, j, ch
    cdef double acc
    for t in range(ntrees):
        for k in range(ptr[t], ptr[t + 1]):
            ch = idx[k]
            for i in range(s):
                acc = 0.0
                for j in range(i):
                    acc += A[i, j] * W[ch, j]
                W[t, i] *= acc
    return W_arr


cdef inline double _horner(double* coef, int n, double x) nogil:
    cdef double acc = 0.0
    cdef int k
    for k in range(n - 1, -1, -1):
        acc = acc * x + coef[k]
    return acc


cdef int _roots_in_unit(double* coef, int n, double tol, double* out) nogil:
    # roots of sum coef[k] x^k in (0, 1), sorted; returns count
    cdef double deriv[8]
    cdef double knots[10]
    cdef double r, lo, hi, flo, fhi, a, b, m, fm
    cdef int nk, nr = 0, k, q
    while n > 0 and coef[n - 1] == 0.0:
        n -= 1
    if n <= 1:
        return 0
    if n == 2:
        r = -coef[0] / coef[1]
        if 0.0 < r < 1.0:
            out[0] = r
            return 1
        return 0
    for k in range(1, n):
        deriv[k - 1] = k * coef[k]
    knots[0] = 0.0
    nk = 1 + _roots_in_unit(deriv, n - 1, tol, &knots[1])
    knots[nk] = 1.0
    nk += 1
    for q in range(nk - 1):
        lo = knots[q]
        hi = knots[q + 1]
        flo = _horner(coef, n, lo)
        fhi = _horner(coef, n, hi)
        if flo == 0.0:
            if lo > 0.0 and (nr == 0 or out[nr - 1] != lo):
                out[nr] = lo
                nr += 1
            continue
        if flo * fhi > 0.0:
            continue
        a = lo
        b = hi
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = _horner(coef, n, m)
            if fm == 0.0:
                a = m
                b = m
                break
            if (fm > 0.0) == (flo > 0.0):
                a = m
            else:
                b = m
        r = 0.5 * (a + b)
        if 0.0 < r < 1.0:
            out[nr] = r
            nr += 1
    return nr


def variation(B_in, double tol=1e-14):
    cdef const double[:, ::1] B = np.ascontiguousarray(B_in, dtype=np.float64)
    cdef int k = B.shape[0], s = B.shape[1], j, m, nr, q
    if k > 7:
        raise ValueError("variation kernel supports degree <= 7")
    cdef double col[9]
    cdef double deriv[8]
    cdef double knots[10]
    cdef double V = 0.0, N = 0.0, v0, v1, d
    for j in range(s):
        col[0] = 0.0
        for m in range(1, k + 1):
            col[m] = B[m - 1, j]
            deriv[m - 1] = m * B[m - 1, j]
        knots[0] = 0.0
        nr = _roots_in_unit(deriv, k, tol, &knots[1])
        knots[nr + 1] = 1.0
        v0 = _horner(col, k + 1, 0.0)
        for q in range(1, nr + 2):
            v1 = _horner(col, k + 1, knots[q])
            d = v1 - v0
            V += fabs(d)
            if d < 0.0:
                N -= d
            v0 = v1
    return V, N


def rk_step(f, double t, x_in, double h, A_in, c_in, b_in, D_in, F1, int fsal):
    cdef const double[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(c_in, dtype=np.float64)
    cdef const double[::1] b = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef const double[:, ::1] D = np.ascontiguousarray(D_in, dtype=np.float64).reshape(-1, c.shape[0])
    cdef const double[::1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef Py_ssize_t s = c.shape[0], n = x.shape[0], nd = D.shape[0]
    K_arr = np.empty((s, n))
    cdef double[:, ::1] K = K_arr
    cdef double[::1] Xi
    cdef const double[::1] Fi
    cdef Py_ssize_t i, j, q
    cdef double acc, e
    cdef int nfev = 0
    x_next = None
    if F1 is None:
        Fi = np.ascontiguousarray(f(t, np.asarray(x)), dtype=np.float64)
        nfev += 1
    else:
        Fi = np.ascontiguousarray(F1, dtype=np.float64)
    K[0, :] = Fi
    for i in range(1, s):
        X_arr = np.empty(n)
        Xi = X_arr
        for q in range(n):
            acc = 0.0
            for j in range(i):
                acc += A[i, j] * K[j, q]
            Xi[q] = x[q] + h * acc
        if i == fsal:
            x_next = X_arr
        Fi = np.ascontiguousarray(f(t + c[i] * h, X_arr), dtype=np.float64)
        nfev += 1
        K[i, :] = Fi
    if x_next is None:
        X_arr = np.empty(n)
        Xi = X_arr
        for q in range(n):
            acc = 0.0
            for j in range(s):
                acc += b[j] * K[j, q]
            Xi[q] = x[q] + h * acc
        x_next = X_arr
    E_arr = np.zeros(nd)
    cdef double[::1] E = E_arr
    for i in range(nd):
        e = 0.0
        for q in range(n):
            acc = 0.0
            for j in range(s):
                acc += D[i, j] * K[j, q]
            e += (h * acc) * (h * acc)
        E[i] = sqrt(e)
    return x_next, K_arr, E_arr, nfev


def poly_max(coef_in, int grid_n, double tol):
    cdef const double[::1] coef = np.ascontiguousarray(coef_in, dtype=np.float64)
    cdef int n = coef.shape[0], i, ibest = 0
    cdef double g = (sqrt(5.0) - 1.0) / 2.0
    cdef double x, v, best_v = -1e308, best_x = 0.0, a, b, x1, x2, f1, f2, xm, fm
    for i in range(grid_n):
        x = i / (grid_n - 1.0)
        v = _horner(&coef[0], n, x)
        if v > best_v:
            best_v = v
            best_x = x
            ibest = i
    a = (ibest - 1) / (grid_n - 1.0) if ibest > 0 else 0.0
    b = (ibest + 1) / (grid_n - 1.0) if ibest < grid_n - 1 else 1.0
    x1 = b - g * (b - a)
    x2 = a + g * (b - a)
    f1 = _horner(&coef[0], n, x1)
    f2 = _horner(&coef[0], n, x2)
    while b - a > tol:
        if f1 >= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - g * (b - a)
            f1 = _horner(&coef[0], n, x1)
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + g * (b - a)
            f2 = _horner(&coef[0], n, x2)
    xm = 0.5 * (a + b)
    fm = _horner(&coef[0], n, xm)
    if fm > best_v:
        return xm, fm
    return best_x, best_v
