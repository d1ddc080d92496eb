"""Counter-based random number generation.

Every stochastic quantity in the simulator is drawn from SplitMix64
evaluated as a pure function of (seed, stream, counter).  Runs are therefore
reproducible from the 64-bit seed alone, independent streams never share
state, and the generator is small enough to restate in any language:

    value(seed, stream, n) = mix(substream(seed, stream) + (n + 1) * GAMMA)

with GAMMA = 0x9E3779B97F4A7C15, mix the standard SplitMix64 finalizer, and
substream(seed, stream) = mix(seed ^ mix(stream * STREAM_SALT)).  Bounded
draws reduce the 64-bit value modulo the span, inclusive of both endpoints.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
STREAM_SALT = 0xD2B74407B1CE6E93


def mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def substream_seed(seed: int, stream: int) -> int:
    return mix64((seed & _MASK) ^ mix64((stream * STREAM_SALT) & _MASK))


class Stream:
    """One independent draw sequence identified by (seed, stream)."""

    __slots__ = ("_base", "_counter", "seed", "stream")

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed & _MASK
        self.stream = stream
        self._base = substream_seed(seed, stream)
        self._counter = 0

    def next_u64(self) -> int:
        self._counter += 1
        return mix64(self._base + self._counter * GAMMA)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        if hi == lo:
            return lo
        return lo + self.next_u64() % (hi - lo + 1)
