"""Deterministic randomness primitives.

All randomness in the engine flows through one generator: SplitMix64
(Steele, Lea & Flood, "Fast splittable pseudorandom number generators",
reference finalizer constants).  The generator is used in counter form,

    output[k] = mix64(seed + (k+1) * GOLDEN)      (mod 2**64)

which is identical to the usual stateful formulation but lets whole
streams be produced as vectorized numpy expressions.  Image keys are
hashed with 64-bit FNV-1a over their UTF-8 bytes.  Both algorithms are
published and trivially reimplementable, so seeds, selections and
permutations reproduce bit-for-bit on any platform.

Sub-streams (per tile, per segment, per pipeline stage) are derived by
folding integers into a seed:  s' = mix64((s ^ v) + GOLDEN).
"""

from __future__ import annotations

import numpy as np

from . import _backend

MASK64 = (1 << 64) - 1

GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

# 2**-53, scale for the top-53-bit uniform-double mapping
_U53 = 2.0**-53


def mix64(z: int) -> int:
    """SplitMix64 output mix of a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & MASK64
    return (z ^ (z >> 31)) & MASK64


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    return _backend.fnv1a64(data)


def derive_image_seed(master_seed: int, image_key: str) -> int:
    """Per-image stream seed: mix64((master_seed ^ fnv1a64(key)) + GOLDEN).

    Pure and platform-stable; the same (seed, key) pair always yields the
    same value, independent of scheduling or worker count.
    """
    if not image_key:
        raise ValueError("image_key must be a non-empty string")
    h = fnv1a64(image_key.encode("utf-8"))
    return mix64(((master_seed & MASK64) ^ h) + GOLDEN)


def derive_substream(seed: int, *values: int) -> int:
    """Fold integers into `seed`, one mix64((s ^ v) + GOLDEN) step each."""
    s = seed & MASK64
    for v in values:
        s = mix64((s ^ (v & MASK64)) + GOLDEN)
    return s


def stream_words(seed: int, n: int) -> np.ndarray:
    """First n outputs of the SplitMix64 stream for `seed`, as uint64."""
    if n < 0:
        raise ValueError("n must be >= 0")
    k = np.arange(1, n + 1, dtype=np.uint64)
    z = np.uint64(seed & MASK64) + k * np.uint64(GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def stream_doubles(seed: int, n: int) -> np.ndarray:
    """First n stream outputs mapped to [0, 1) via their top 53 bits."""
    return (stream_words(seed, n) >> np.uint64(11)).astype(np.float64) * _U53


def bernoulli_select(seed: int, n: int, p: float) -> np.ndarray:
    """Indices of 0..n-1 kept independently with probability p, ascending.

    Index i is kept iff the i-th stream double is < p, so p=0 selects
    nothing and p=1 selects everything.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be >= 0")
    return np.nonzero(stream_doubles(seed, n) < p)[0]


def seeded_permutation(seed: int, n: int) -> np.ndarray:
    """Fisher-Yates permutation of 0..n-1 driven by the stream for `seed`.

    Backward variant, one stream word per step: for i = n-1 .. 1 swap
    position i with position stream[k] % (i+1), k = 0, 1, ...
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return _backend.fisher_yates(seed & MASK64, n)


def normal_samples(seed: int, n: int) -> np.ndarray:
    """n standard-normal samples from the stream for `seed`.

    Box-Muller on consecutive word pairs (o[2t], o[2t+1]):
        u1 = 1 - unit(o[2t])   in (0, 1]
        u2 = unit(o[2t+1])
        z[2t]   = sqrt(-2 ln u1) * cos(2 pi u2)
        z[2t+1] = sqrt(-2 ln u1) * sin(2 pi u2)
    For odd n the trailing sample of the last pair is dropped.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return np.empty(0, dtype=np.float64)
    pairs = (n + 1) // 2
    u = stream_doubles(seed, 2 * pairs)
    u1 = 1.0 - u[0::2]
    u2 = u[1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    theta = (2.0 * np.pi) * u2
    z = np.empty(2 * pairs, dtype=np.float64)
    z[0::2] = r * np.cos(theta)
    z[1::2] = r * np.sin(theta)
    return z[:n]
