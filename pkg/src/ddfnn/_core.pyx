# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled training kernels: neighbor search + local fits, and the
hidden-layer output matrix.

Semantics match ``ddfnn._core_py``: neighbors are exact k-nearest by
squared Euclidean distance with ties broken by ascending row index, local
fits use LAPACK dgelsd with the same cutoff numpy's lstsq applies, and the
pre-activation is accumulated coordinate by coordinate with the bias added
last.
"""

from libc.float cimport DBL_EPSILON
from libc.math cimport exp, fabs, log, log1p, sin

import numpy as np

cimport numpy as cnp
from scipy.linalg.cython_lapack cimport dgelsd

cnp.import_array()

NAME = "compiled"


cdef inline bint _pair_less(double d1, long long i1, double d2, long long i2) noexcept nogil:
    return d1 < d2 or (d1 == d2 and i1 < i2)


cdef void _heap_sift_down(double* hd, long long* hi, int start, int end) noexcept nogil:
    # max-heap on (distance, index) pairs
    cdef int root = start, child
    cdef double dtmp
    cdef long long itmp
    while 2 * root + 1 <= end:
        child = 2 * root + 1
        if child + 1 <= end and _pair_less(hd[child], hi[child], hd[child + 1], hi[child + 1]):
            child += 1
        if _pair_less(hd[root], hi[root], hd[child], hi[child]):
            dtmp = hd[root]; hd[root] = hd[child]; hd[child] = dtmp
            itmp = hi[root]; hi[root] = hi[child]; hi[child] = itmp
            root = child
        else:
            return


cdef void _select_k_nearest(const double[:, ::1] X, long long center, int k,
                            double* hd, long long* hi) noexcept nogil:
    # Fills hd/hi (length k) with the k nearest rows to `center` (excluded),
    # sorted ascending by (distance, index).
    cdef Py_ssize_t n_rows = X.shape[0], n = X.shape[1]
    cdef Py_ssize_t i, j
    cdef int count = 0, pos
    cdef double d2, diff, dtmp
    cdef long long itmp
    for i in range(n_rows):
        if i == <Py_ssize_t>center:
            continue
        d2 = 0.0
        for j in range(n):
            diff = X[i, j] - X[center, j]
            d2 += diff * diff
        if count < k:
            # push and sift up
            hd[count] = d2
            hi[count] = i
            pos = count
            count += 1
            while pos > 0 and _pair_less(hd[(pos - 1) // 2], hi[(pos - 1) // 2], hd[pos], hi[pos]):
                dtmp = hd[pos]; hd[pos] = hd[(pos - 1) // 2]; hd[(pos - 1) // 2] = dtmp
                itmp = hi[pos]; hi[pos] = hi[(pos - 1) // 2]; hi[(pos - 1) // 2] = itmp
                pos = (pos - 1) // 2
        elif _pair_less(d2, i, hd[0], hi[0]):
            hd[0] = d2
            hi[0] = i
            _heap_sift_down(hd, hi, 0, k - 1)
    # heap-sort in place: repeatedly move the max to the tail
    cdef int end
    for end in range(k - 1, 0, -1):
        dtmp = hd[0]; hd[0] = hd[end]; hd[end] = dtmp
        itmp = hi[0]; hi[0] = hi[end]; hi[end] = itmp
        _heap_sift_down(hd, hi, 0, end - 1)


def place_hyperplanes(double[:, ::1] X, double[::1] Y, long long[::1] anchors, int k):
    """Fit a local hyperplane around every anchor row.

    Returns ``(slopes (m, n), intercepts (m,))``; minimum-norm solution on
    rank-deficient neighborhoods, cutoff eps * max(k+1, n+1) as in numpy.
    """
    cdef Py_ssize_t n_rows = X.shape[0]
    cdef int n = <int>X.shape[1]
    cdef Py_ssize_t m = anchors.shape[0]
    if k < 1 or k >= n_rows:
        raise ValueError(f"k={k} needs at least k+1 dataset points")

    slopes_arr = np.empty((m, n), dtype=np.float64)
    intercepts_arr = np.empty(m, dtype=np.float64)
    cdef double[:, ::1] slopes = slopes_arr
    cdef double[::1] intercepts = intercepts_arr

    cdef int rows = k + 1, cols = n + 1
    cdef int nrhs = 1, lda = rows, ldb = max(rows, cols), rank = 0, info = 0
    cdef double rcond = DBL_EPSILON * max(rows, cols)

    # workspace query (sizes are identical for every anchor)
    cdef double wq = 0.0
    cdef int iwq = 0, lwork = -1
    cdef double adummy = 0.0, bdummy = 0.0, sdummy = 0.0
    dgelsd(&rows, &cols, &nrhs, &adummy, &lda, &bdummy, &ldb, &sdummy,
           &rcond, &rank, &wq, &lwork, &iwq, &info)
    if info != 0:
        raise RuntimeError(f"dgelsd workspace query failed (info={info})")
    lwork = <int>wq

    heap_d_arr = np.empty(k, dtype=np.float64)
    heap_i_arr = np.empty(k, dtype=np.int64)
    a_arr = np.empty(rows * cols, dtype=np.float64)          # column-major fit matrix
    b_arr = np.empty(ldb, dtype=np.float64)
    s_arr = np.empty(min(rows, cols), dtype=np.float64)
    work_arr = np.empty(max(1, lwork), dtype=np.float64)
    iwork_arr = np.empty(max(1, iwq), dtype=np.int32)
    cdef double[::1] hd = heap_d_arr
    cdef long long[::1] hi = heap_i_arr
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    cdef double[::1] s = s_arr
    cdef double[::1] work = work_arr
    cdef int[::1] iwork = iwork_arr

    cdef Py_ssize_t i, r, j
    cdef long long center, row_idx
    with nogil:
        for i in range(m):
            center = anchors[i]
            _select_k_nearest(X, center, k, &hd[0], &hi[0])
            # row 0 is the anchor, then neighbors ascending by (distance, index)
            for r in range(rows):
                row_idx = center if r == 0 else hi[r - 1]
                for j in range(n):
                    a[(<Py_ssize_t>j) * rows + r] = X[row_idx, j]
                a[(<Py_ssize_t>n) * rows + r] = 1.0
                b[r] = Y[row_idx]
            dgelsd(&rows, &cols, &nrhs, &a[0], &lda, &b[0], &ldb, &s[0],
                   &rcond, &rank, &work[0], &lwork, &iwork[0], &info)
            if info != 0:
                break
            for j in range(n):
                slopes[i, j] = b[j]
            intercepts[i] = b[n]
    if info != 0:
        raise RuntimeError(f"dgelsd failed to converge (info={info})")
    return slopes_arr, intercepts_arr


cdef inline double _activate(double z, int kind, bint softplus_naive) noexcept nogil:
    cdef double e
    if kind == 0:    # unipolar sigmoid
        if z >= 0.0:
            return 1.0 / (1.0 + exp(-z))
        e = exp(z)
        return e / (1.0 + e)
    elif kind == 1:  # bipolar sigmoid
        if z >= 0.0:
            return 2.0 / (1.0 + exp(-z)) - 1.0
        e = exp(z)
        return 2.0 * e / (1.0 + e) - 1.0
    elif kind == 2:  # sine
        return sin(z)
    elif kind == 3:  # saturating linear, unipolar
        if z <= 0.0:
            return 0.0
        if z >= 1.0:
            return 1.0
        return z
    elif kind == 4:  # saturating linear, bipolar
        if z <= -1.0:
            return -1.0
        if z >= 1.0:
            return 1.0
        return z
    elif kind == 5:  # reLU
        return z if z > 0.0 else 0.0
    else:            # softplus
        if softplus_naive:
            return log(1.0 + exp(z))
        return (z if z > 0.0 else 0.0) + log1p(exp(-fabs(z)))


def design_matrix(double[:, ::1] X, double[:, ::1] weights, double[::1] biases,
                  int kind_code, bint softplus_naive=False):
    """Hidden-layer output matrix H with H[i, j] = h_j(x_i)."""
    cdef Py_ssize_t n_rows = X.shape[0], n = X.shape[1], m = weights.shape[0]
    if weights.shape[1] != n:
        raise ValueError("weights width must match the input dimension")
    if biases.shape[0] != m:
        raise ValueError("one bias per hidden node required")
    if kind_code < 0 or kind_code > 6:
        raise ValueError(f"unknown activation code {kind_code}")

    H_arr = np.empty((n_rows, m), dtype=np.float64)
    cdef double[:, ::1] H = H_arr
    cdef Py_ssize_t i, j, l
    cdef double z
    with nogil:
        for i in range(n_rows):
            for j in range(m):
                z = X[i, 0] * weights[j, 0]
                for l in range(1, n):
                    z += X[i, l] * weights[j, l]
                z += biases[j]
                H[i, j] = _activate(z, kind_code, softplus_naive)
    return H_arr
