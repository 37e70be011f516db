# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the RNG/bootstrap core.

Mirrors rleval.backends.pure word for word: Philox4x32-10 with the same
counter layout, the same (u32 * n) >> 32 index draw, and the same
draw-order accumulation, so output is bit-identical to the fallback.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "native"

cdef extern from *:
    """
    #include <stdint.h>
    """
    ctypedef unsigned int uint32_t
    ctypedef unsigned long long uint64_t

cdef uint32_t M0 = 0xD2511F53u
cdef uint32_t M1 = 0xCD9E8D57u
cdef uint32_t W0 = 0x9E3779B9u
cdef uint32_t W1 = 0xBB67AE85u


cdef inline void _philox10(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3,
                           uint32_t k0, uint32_t k1, uint32_t *out) nogil:
    cdef uint64_t p0, p1
    cdef uint32_t hi0, lo0, hi1, lo1
    cdef int r
    for r in range(10):
        p0 = (<uint64_t> M0) * c0
        p1 = (<uint64_t> M1) * c2
        hi0 = <uint32_t> (p0 >> 32)
        lo0 = <uint32_t> p0
        hi1 = <uint32_t> (p1 >> 32)
        lo1 = <uint32_t> p1
        c0 = hi1 ^ c1 ^ k0
        c1 = lo1
        c2 = hi0 ^ c3 ^ k1
        c3 = lo0
        k0 = k0 + W0
        k1 = k1 + W1
    out[0] = c0
    out[1] = c1
    out[2] = c2
    out[3] = c3


def philox_u32_blocks(key0, key1, domain, stream, block_start, nblocks):
    """Generate `nblocks` consecutive counter blocks, 4 uint32 words each."""
    cdef Py_ssize_t m = nblocks
    cdef cnp.ndarray[cnp.uint32_t, ndim=2] out = np.empty((m, 4), dtype=np.uint32)
    cdef uint32_t k0 = <uint32_t> key0
    cdef uint32_t k1 = <uint32_t> key1
    cdef uint32_t c2 = <uint32_t> stream
    cdef uint32_t c3 = <uint32_t> domain
    cdef uint64_t base = <uint64_t> block_start
    cdef uint64_t blk
    cdef Py_ssize_t i
    cdef uint32_t buf[4]
    for i in range(m):
        blk = base + <uint64_t> i
        _philox10(<uint32_t> blk, <uint32_t> (blk >> 32), c2, c3, k0, k1, buf)
        out[i, 0] = buf[0]
        out[i, 1] = buf[1]
        out[i, 2] = buf[2]
        out[i, 3] = buf[3]
    return out


def bootstrap_means(sample, n_resamples, key0, key1, domain):
    """Means of `n_resamples` with-replacement resamples of `sample`."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] src = np.ascontiguousarray(
        sample, dtype=np.float64
    )
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t b = n_resamples
    cdef cnp.ndarray[cnp.float64_t, ndim=1] means = np.empty(b, dtype=np.float64)
    cdef uint32_t k0 = <uint32_t> key0
    cdef uint32_t k1 = <uint32_t> key1
    cdef uint32_t dom = <uint32_t> domain
    cdef Py_ssize_t blocks_per = (n + 3) // 4
    cdef Py_ssize_t i, blk, lane, j, idx
    cdef double acc
    cdef uint32_t buf[4]
    cdef double *data = <double *> src.data
    cdef uint64_t n_u64 = <uint64_t> n
    with nogil:
        for i in range(b):
            acc = 0.0
            j = 0
            for blk in range(blocks_per):
                _philox10(<uint32_t> blk, 0u, <uint32_t> i, dom, k0, k1, buf)
                for lane in range(4):
                    if j >= n:
                        break
                    idx = <Py_ssize_t> (((<uint64_t> buf[lane]) * n_u64) >> 32)
                    acc += data[idx]
                    j += 1
            means[i] = acc / n
    return means
