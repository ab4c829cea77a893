"""Deterministic 64-bit random streams for simulations and game sessions.

The generator is SplitMix64: the state advances by a fixed odd constant
(the 64-bit golden ratio) and each output is a bijective avalanche mix of
the state.  It is trivially splittable; stream ``i`` of a seed starts from
``mix64(seed + GOLDEN * i)``, so every trial owns an independent stream
that can be replayed in isolation, in parallel, or in vectorised form,
and adding more trials never perturbs earlier ones.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 output function (a 64-bit bijection)."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MIX1) & MASK64
    x ^= x >> 27
    x = (x * _MIX2) & MASK64
    x ^= x >> 31
    return x


def stream_state(seed: int, index: int = 0) -> int:
    """Initial internal state of stream `index` derived from `seed`."""
    return mix64((seed + GOLDEN * index) & MASK64)


class SplitMix64:
    """Scalar SplitMix64 stream."""

    def __init__(self, state: int):
        self._state = state & MASK64

    @classmethod
    def from_seed(cls, seed: int, index: int = 0) -> "SplitMix64":
        return cls(stream_state(seed, index))

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def randrange(self, m: int) -> int:
        # modulo of a 64-bit draw; bias is < m / 2**64, irrelevant for m <= 2**32
        if m <= 0:
            raise ValueError("randrange bound must be positive")
        return self.next_u64() % m

    def choice(self, seq):
        return seq[self.randrange(len(seq))]


# Vectorised counterparts operating on uint64 numpy arrays.

_NP_GOLDEN = np.uint64(GOLDEN)
_NP_MIX1 = np.uint64(_MIX1)
_NP_MIX2 = np.uint64(_MIX2)


def np_mix64(z: np.ndarray) -> np.ndarray:
    z = z.copy()
    z ^= z >> np.uint64(30)
    z *= _NP_MIX1
    z ^= z >> np.uint64(27)
    z *= _NP_MIX2
    z ^= z >> np.uint64(31)
    return z


def np_stream_states(seed: int, n: int) -> np.ndarray:
    """Initial states for streams 0..n-1 of `seed`."""
    idx = np.arange(n, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return np_mix64(np.uint64(seed & MASK64) + _NP_GOLDEN * idx)


def np_next_u64(states: np.ndarray, lanes: np.ndarray | None = None) -> np.ndarray:
    """Advance the selected lanes in place and return their outputs.

    `lanes` is a boolean mask; unselected lanes do not consume a draw, so
    each lane's sequence matches the scalar stream of the same index.
    """
    with np.errstate(over="ignore"):
        if lanes is None:
            states += _NP_GOLDEN
            return np_mix64(states)
        states[lanes] += _NP_GOLDEN
        return np_mix64(states[lanes])
