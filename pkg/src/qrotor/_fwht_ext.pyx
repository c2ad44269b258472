# cython: boundscheck=False, wraparound=False, cdivision=True
"""In-place unnormalized Walsh-Hadamard butterflies, one transform per row."""

ctypedef fused scalar_t:
    double
    double complex


def fwht_rows_inplace(scalar_t[:, ::1] a):
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t r, h, i, j
    cdef scalar_t x, y
    with nogil:
        for r in range(rows):
            h = 1
            while h < n:
                i = 0
                while i < n:
                    for j in range(i, i + h):
                        x = a[r, j]
                        y = a[r, j + h]
                        a[r, j] = x + y
                        a[r, j + h] = x - y
                    i += 2 * h
                h *= 2
