# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination kernel (hot loop of the multimodular backend)."""

from libc.stdint cimport int64_t


cdef inline int64_t _mod_inverse(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t old_r = a
    cdef int64_t r = p
    cdef int64_t old_s = 1
    cdef int64_t s = 0
    cdef int64_t q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s
        old_s = s
        s = tmp
    if old_s < 0:
        old_s += p
    return old_s


def det_mod_p(int64_t[:, ::1] a, int64_t p):
    """Determinant mod p of a square int64 array with entries in [0, p).

    Requires p < 2**31 so that products of two residues fit in int64.
    The array is modified in place.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, piv_row
    cdef int64_t det = 1
    cdef int64_t piv, inv, factor, v
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    with nogil:
        for k in range(n):
            piv_row = -1
            for i in range(k, n):
                if a[i, k] != 0:
                    piv_row = i
                    break
            if piv_row < 0:
                det = 0
                break
            if piv_row != k:
                for j in range(k, n):
                    v = a[k, j]
                    a[k, j] = a[piv_row, j]
                    a[piv_row, j] = v
                det = p - det
            piv = a[k, k]
            det = (det * piv) % p
            inv = _mod_inverse(piv, p)
            for i in range(k + 1, n):
                if a[i, k] == 0:
                    continue
                factor = (a[i, k] * inv) % p
                for j in range(k, n):
                    v = (a[i, j] - factor * a[k, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
    return int(det)
