"""Deterministic randomness: splitmix64 streams and sampling without replacement.

The generator is pinned by name ("splitmix64") so that run manifests can
record exactly how random sets were produced.  Derived seeds mix a parent
seed with a stream index, which keeps parallel sweep rows independent of
worker scheduling.
"""

from __future__ import annotations

from .errors import SizeExceedsFieldError

GENERATOR_NAME = "splitmix64"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """splitmix64 finalizer: one 64-bit avalanche round."""
    z = (x + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed for stream `index` of a parent seed."""
    return mix64((seed & _MASK64) ^ mix64(index & _MASK64))


class SplitMix64:
    """Minimal splitmix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform draw in [0, bound) by rejection; unbiased for any bound >= 1."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        words = max(1, (bound.bit_length() + 63) // 64)
        space = 1 << (64 * words)
        limit = space - (space % bound)
        while True:
            u = 0
            for _ in range(words):
                u = (u << 64) | self.next64()
            if u < limit:
                return u % bound


def sample_distinct(modulus: int, size: int, seed: int) -> list[int]:
    """`size` distinct residues in [0, modulus), sorted, deterministic in seed."""
    if size > modulus:
        raise SizeExceedsFieldError(f"cannot sample {size} distinct residues mod {modulus}")
    if size == 0:
        return []
    rng = SplitMix64(seed)
    if modulus <= 1 << 20:
        # partial Fisher-Yates over the full universe
        pool = list(range(modulus))
        for i in range(size):
            j = i + rng.below(modulus - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:size])
    if 2 * size <= modulus:
        chosen: set[int] = set()
        while len(chosen) < size:
            chosen.add(rng.below(modulus))
        return sorted(chosen)
    # dense request against a huge modulus: sample the complement instead
    excluded: set[int] = set()
    while len(excluded) < modulus - size:
        excluded.add(rng.below(modulus))
    return [x for x in range(modulus) if x not in excluded]
