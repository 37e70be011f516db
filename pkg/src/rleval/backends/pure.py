"""Numpy implementation of the counter-based RNG core.

The generator is Philox4x32-10 (Salmon et al., 2011): a bijective keyed
mixing of a 128-bit counter into four 32-bit words, ten rounds. Counter
layout used throughout the toolkit:

    word0 = block index, low 32 bits
    word1 = block index, high 32 bits
    word2 = stream id   (e.g. bootstrap resample index, run index)
    word3 = domain tag  (keeps unrelated consumers on disjoint streams)

Everything here is integer arithmetic plus IEEE-754 double adds performed
in a defined order, so the compiled backend produces bit-identical output.
"""

import numpy as np

BACKEND_NAME = "pure"

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint64(0x9E3779B9)
_W1 = np.uint64(0xBB67AE85)
_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)

# Bound on the uint64 scratch held by one vectorised philox call.
_MAX_BLOCKS_PER_CALL = 1 << 20


def _philox_rounds(c0, c1, c2, c3, key0, key1):
    """Ten Philox4x32 rounds over uint64 arrays holding 32-bit values."""
    k0 = np.uint64(key0)
    k1 = np.uint64(key1)
    for _ in range(10):
        p0 = _M0 * c0
        p1 = _M1 * c2
        hi0 = p0 >> _SHIFT32
        lo0 = p0 & _MASK32
        hi1 = p1 >> _SHIFT32
        lo1 = p1 & _MASK32
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
        k0 = (k0 + _W0) & _MASK32
        k1 = (k1 + _W1) & _MASK32
    return c0, c1, c2, c3


def philox_u32_blocks(key0, key1, domain, stream, block_start, nblocks):
    """Generate `nblocks` consecutive counter blocks, 4 uint32 words each."""
    out = np.empty((nblocks, 4), dtype=np.uint32)
    done = 0
    while done < nblocks:
        take = min(nblocks - done, _MAX_BLOCKS_PER_CALL)
        idx = np.arange(block_start + done, block_start + done + take, dtype=np.uint64)
        c0 = idx & _MASK32
        c1 = idx >> _SHIFT32
        c2 = np.full(take, stream, dtype=np.uint64)
        c3 = np.full(take, domain, dtype=np.uint64)
        o0, o1, o2, o3 = _philox_rounds(c0, c1, c2, c3, key0, key1)
        out[done : done + take, 0] = o0.astype(np.uint32)
        out[done : done + take, 1] = o1.astype(np.uint32)
        out[done : done + take, 2] = o2.astype(np.uint32)
        out[done : done + take, 3] = o3.astype(np.uint32)
        done += take
    return out


def bootstrap_means(sample, n_resamples, key0, key1, domain):
    """Means of `n_resamples` with-replacement resamples of `sample`.

    Resample i draws len(sample) indices from its own stream (stream id = i,
    block j supplies draws 4j..4j+3). Index draw: (u32 * n) >> 32. The mean
    accumulates in draw order, which the compiled backend mirrors exactly.
    """
    src = np.ascontiguousarray(sample, dtype=np.float64)
    n = src.shape[0]
    blocks_per = (n + 3) // 4
    means = np.empty(n_resamples, dtype=np.float64)
    # Chunk over resamples to bound scratch memory.
    chunk = max(1, _MAX_BLOCKS_PER_CALL // max(1, blocks_per))
    n_u64 = np.uint64(n)
    for start in range(0, n_resamples, chunk):
        stop = min(start + chunk, n_resamples)
        streams = np.arange(start, stop, dtype=np.uint64)
        c0 = np.tile(np.arange(blocks_per, dtype=np.uint64), stop - start)
        c1 = np.zeros_like(c0)
        c2 = np.repeat(streams, blocks_per)
        c3 = np.full_like(c0, domain)
        o0, o1, o2, o3 = _philox_rounds(c0, c1, c2, c3, key0, key1)
        lanes = np.stack([o0, o1, o2, o3], axis=1).reshape(stop - start, blocks_per * 4)
        draws = lanes[:, :n]
        idx = ((draws * n_u64) >> _SHIFT32).astype(np.intp)
        acc = np.zeros(stop - start, dtype=np.float64)
        for j in range(n):
            acc += src[idx[:, j]]
        means[start:stop] = acc / n
    return means
