"""Independent reference implementations used to compute expected values.

Everything here is written straight from the published algorithm
definitions (SplitMix64, FNV-1a) using plain Python integers and lists,
deliberately not importing any eitkit internals.  Golden constants in the
test modules were produced by these functions and then frozen.
"""

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def splitmix64_mix(z: int) -> int:
    """SplitMix64 output mix (Steele/Lea/Flood 2014 reference finalizer)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & MASK64
    return (z ^ (z >> 31)) & MASK64


def splitmix64_stream(seed: int, n: int) -> list[int]:
    """First n outputs of a SplitMix64 generator seeded with `seed`.

    Stateful formulation: state advances by the golden gamma before each
    output is mixed.  Equivalent to mix(seed + (k+1)*gamma).
    """
    state = seed & MASK64
    out = []
    for _ in range(n):
        state = (state + _GOLDEN) & MASK64
        out.append(splitmix64_mix(state))
    return out


def unit_double(word: int) -> float:
    """Map a 64-bit word to [0, 1) using its top 53 bits."""
    return (word >> 11) * 2.0**-53


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & MASK64
    return h


def derive_image_seed(master_seed: int, image_key: str) -> int:
    h = fnv1a64(image_key.encode("utf-8"))
    return splitmix64_mix(((master_seed & MASK64) ^ h) + _GOLDEN)


def derive_substream(seed: int, *values: int) -> int:
    s = seed & MASK64
    for v in values:
        s = splitmix64_mix((s ^ (v & MASK64)) + _GOLDEN)
    return s


def fisher_yates(seed: int, n: int) -> list[int]:
    """Backward Fisher-Yates driven by the SplitMix64 stream.

    One draw per step, modulo reduction: for i = n-1 .. 1 the i-th swap
    partner is stream[k] % (i+1) with k = 0, 1, ...
    """
    perm = list(range(n))
    draws = splitmix64_stream(seed, max(0, n - 1))
    k = 0
    for i in range(n - 1, 0, -1):
        j = draws[k] % (i + 1)
        k += 1
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def bernoulli_select(seed: int, n: int, p: float) -> list[int]:
    """Indices 0..n-1 kept independently with probability p (one stream
    word per index, kept iff its unit double is < p)."""
    words = splitmix64_stream(seed, n)
    return [i for i in range(n) if unit_double(words[i]) < p]


def permute_selected(values: list, seed: int, p: float) -> list:
    """Select-then-permute semantics on a flat list of pixel values:
    Bernoulli-select positions with substream 1, permute the selected
    values among themselves with substream 2."""
    sel = bernoulli_select(derive_substream(seed, 1), len(values), p)
    perm = fisher_yates(derive_substream(seed, 2), len(sel))
    out = list(values)
    for t, dest in enumerate(sel):
        out[dest] = values[sel[perm[t]]]
    return out
