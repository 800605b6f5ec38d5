# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled patch-degree kernels.

The degree of a reduced polynomial equals, over all columns, the largest
count of entries strictly below the column maximum: coefficients are
nonnegative so aggregation never cancels a term.
"""

ctypedef long long i64


cdef inline int _vertical(const i64[:, ::1] img, Py_ssize_t r0, Py_ssize_t c0,
                          Py_ssize_t h, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef i64 mx, v
    cdef int cnt, best = 0
    for j in range(c0, c0 + w):
        mx = img[r0, j]
        for i in range(r0 + 1, r0 + h):
            v = img[i, j]
            if v > mx:
                mx = v
        cnt = 0
        for i in range(r0, r0 + h):
            if img[i, j] < mx:
                cnt += 1
        if cnt > best:
            best = cnt
            if best == h - 1:
                break
    return best


cdef inline int _horizontal(const i64[:, ::1] img, Py_ssize_t r0, Py_ssize_t c0,
                            Py_ssize_t h, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef i64 mx, v
    cdef int cnt, best = 0
    for i in range(r0, r0 + h):
        mx = img[i, c0]
        for j in range(c0 + 1, c0 + w):
            v = img[i, j]
            if v > mx:
                mx = v
        cnt = 0
        for j in range(c0, c0 + w):
            if img[i, j] < mx:
                cnt += 1
        if cnt > best:
            best = cnt
            if best == w - 1:
                break
    return best


def degree_rows(const i64[:, ::1] img, Py_ssize_t h, Py_ssize_t w, Py_ssize_t stride,
                bint use_min, Py_ssize_t row_start, Py_ssize_t row_stop, i64[:, ::1] out):
    """Fill grid rows ``row_start:row_stop`` of ``out`` with combined patch degrees."""
    cdef Py_ssize_t gr, gc, ncols = out.shape[1]
    cdef int dv, dh
    with nogil:
        for gr in range(row_start, row_stop):
            for gc in range(ncols):
                dv = _vertical(img, gr * stride, gc * stride, h, w)
                dh = _horizontal(img, gr * stride, gc * stride, h, w)
                if use_min:
                    out[gr, gc] = dv if dv < dh else dh
                else:
                    out[gr, gc] = dv if dv > dh else dh
