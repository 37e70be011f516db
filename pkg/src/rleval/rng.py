"""Seeded deterministic random numbers.

All randomness in the toolkit flows through SeededRng, a facade over the
Philox4x32-10 counter generator in `rleval.backends`. The same seed yields
the same stream on every platform and process run; there is no global or
time-based state anywhere.

Key derivation: the 64-bit seed is diffused through splitmix64 and split
into the two 32-bit Philox key words. Consumers are separated by a domain
tag plus a stream id (see `rleval.backends.pure` for the counter layout),
so independent draws never overlap.
"""

import numpy as np

from . import backends
from .errors import ValidationError

MAX_SEED = 2**64 - 1

# Domain tags. Values are part of the on-disk reproducibility contract.
DOMAIN_GENERIC = 0
DOMAIN_BOOTSTRAP = 1
DOMAIN_SYNTH = 2
DOMAIN_SAMPLE = 3
DOMAIN_FIT = 4

_M64 = (1 << 64) - 1


def splitmix64(value: int) -> int:
    """One splitmix64 step; used to diffuse user seeds into key material."""
    value = (value + 0x9E3779B97F4A7C15) & _M64
    z = value
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def derive_key(seed: int) -> tuple[int, int]:
    """Split a validated seed into the two 32-bit Philox key words."""
    validate_seed(seed)
    mixed = splitmix64(seed)
    return mixed & 0xFFFFFFFF, mixed >> 32


def validate_seed(seed) -> int:
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ValidationError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed <= MAX_SEED:
        raise ValidationError(f"seed must be in [0, 2^64), got {seed}")
    return seed


class SeededRng:
    """Deterministic generator with explicit stream handling.

    Each bulk request consumes one fresh stream id, so the k-th request on a
    freshly constructed SeededRng(seed) is reproducible regardless of the
    sizes of earlier requests.
    """

    algorithm = "philox4x32-10"

    def __init__(self, seed: int, domain: int = DOMAIN_GENERIC):
        self.seed = validate_seed(seed)
        self._key0, self._key1 = derive_key(seed)
        self._domain = domain
        self._next_stream = 0

    def take_stream(self) -> int:
        stream = self._next_stream
        self._next_stream += 1
        return stream

    def _u32_on(self, stream: int, count: int) -> np.ndarray:
        nblocks = (count + 3) // 4
        blocks = backends.philox_u32_blocks(
            self._key0, self._key1, self._domain, stream, 0, nblocks
        )
        return blocks.reshape(-1)[:count]

    def u32(self, count: int) -> np.ndarray:
        return self._u32_on(self.take_stream(), count)

    def uniform01(self, count: int) -> np.ndarray:
        """Doubles in the open interval (0, 1), 52 random bits each.

        (k + 0.5) * 2^-52 is exactly representable for every k < 2^52, so
        the endpoints 0 and 1 can never be produced by rounding.
        """
        words = self._u32_on(self.take_stream(), 2 * count).astype(np.uint64)
        u64 = (words[0::2] << np.uint64(32)) | words[1::2]
        return ((u64 >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0**-52

    def standard_normal(self, count: int) -> np.ndarray:
        """Inverse-CDF normals; monotone in the underlying uniforms."""
        from .special import std_normal_quantile

        return std_normal_quantile(self.uniform01(count))

    def integers_below(self, n: int, count: int) -> np.ndarray:
        """Uniform integers in [0, n) via the (u32 * n) >> 32 multiply-shift.

        Bias is below n / 2^32, negligible for the sample sizes used here.
        """
        if n <= 0 or n > 0xFFFFFFFF:
            raise ValidationError(f"integers_below requires 0 < n <= 2^32, got {n}")
        draws = self._u32_on(self.take_stream(), count).astype(np.uint64)
        return ((draws * np.uint64(n)) >> np.uint64(32)).astype(np.int64)
