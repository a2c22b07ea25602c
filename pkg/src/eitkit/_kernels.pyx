# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: SplitMix64-driven Fisher-Yates, FNV-1a digests and
the superpixel assignment loop.

Must stay byte-for-byte equivalent to eitkit._kernels_py: same stream,
same visit order, same float expression shapes (the extension is built
with FP contraction off so a*b+c never fuses into an FMA).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15ULL
cdef unsigned long long MIX_A = 0xBF58476D1CE4E5B9ULL
cdef unsigned long long MIX_B = 0x94D049BB133111EBULL

cdef unsigned long long FNV_OFFSET = 0xCBF29CE484222325ULL
cdef unsigned long long FNV_PRIME = 0x100000001B3ULL

NAME = "ext"


cdef inline unsigned long long _mix64(unsigned long long z) noexcept nogil:
    z = (z ^ (z >> 30)) * MIX_A
    z = (z ^ (z >> 27)) * MIX_B
    return z ^ (z >> 31)


def fisher_yates(unsigned long long seed, Py_ssize_t n):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] perm = np.arange(n, dtype=np.int64)
    if n < 2:
        return perm
    cdef long long[::1] a = perm
    cdef Py_ssize_t i, j
    cdef unsigned long long k = 0, word
    cdef long long tmp
    with nogil:
        for i in range(n - 1, 0, -1):
            k += 1
            word = _mix64(seed + k * GOLDEN)
            j = <Py_ssize_t>(word % (<unsigned long long>i + 1))
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp
    return perm


def fnv1a64(const unsigned char[::1] data, unsigned long long h0=FNV_OFFSET):
    cdef unsigned long long h = h0
    cdef Py_ssize_t i, n = data.shape[0]
    with nogil:
        for i in range(n):
            h = (h ^ data[i]) * FNV_PRIME
    return h


def slic_iterate(
    double[:, :, ::1] feat,
    double[::1] cx,
    double[::1] cy,
    double[:, ::1] cfeat,
    double s2,
    int iterations,
    Py_ssize_t win_x,
    Py_ssize_t win_y,
    int[:, ::1] labels,
):
    """See eitkit._kernels_py.slic_iterate for the contract."""
    cdef Py_ssize_t h = feat.shape[0], w = feat.shape[1], nf = feat.shape[2]
    cdef Py_ssize_t k = cx.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] best_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] best = best_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] counts_arr = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] fsums_arr = np.empty((k, nf), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xsums_arr = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ysums_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] counts = counts_arr
    cdef double[:, ::1] fsums = fsums_arr
    cdef double[::1] xsums = xsums_arr
    cdef double[::1] ysums = ysums_arr
    cdef Py_ssize_t it, ki, x0, x1, y0, y1, x, y, f, lab
    cdef double acc, diff, dx, dy, d, cxk, cyk
    cdef double inf = np.inf

    with nogil:
        for it in range(iterations):
            for y in range(h):
                for x in range(w):
                    best[y, x] = inf
            for ki in range(k):
                cxk = cx[ki]
                cyk = cy[ki]
                x0 = <Py_ssize_t>floor(cxk) - win_x
                if x0 < 0:
                    x0 = 0
                x1 = <Py_ssize_t>floor(cxk) + win_x + 1
                if x1 > w:
                    x1 = w
                y0 = <Py_ssize_t>floor(cyk) - win_y
                if y0 < 0:
                    y0 = 0
                y1 = <Py_ssize_t>floor(cyk) + win_y + 1
                if y1 > h:
                    y1 = h
                for y in range(y0, y1):
                    dy = <double>y - cyk
                    for x in range(x0, x1):
                        acc = 0.0
                        for f in range(nf):
                            diff = feat[y, x, f] - cfeat[ki, f]
                            acc += diff * diff
                        dx = <double>x - cxk
                        d = acc + s2 * ((dx * dx) + (dy * dy))
                        if d < best[y, x]:
                            best[y, x] = d
                            labels[y, x] = <int>ki

            for ki in range(k):
                counts[ki] = 0.0
                xsums[ki] = 0.0
                ysums[ki] = 0.0
                for f in range(nf):
                    fsums[ki, f] = 0.0
            for y in range(h):
                for x in range(w):
                    lab = labels[y, x]
                    counts[lab] += 1.0
                    for f in range(nf):
                        fsums[lab, f] += feat[y, x, f]
                    xsums[lab] += <double>x
                    ysums[lab] += <double>y
            for ki in range(k):
                if counts[ki] > 0.0:
                    for f in range(nf):
                        cfeat[ki, f] = fsums[ki, f] / counts[ki]
                    cx[ki] = xsums[ki] / counts[ki]
                    cy[ki] = ysums[ki] / counts[ki]
