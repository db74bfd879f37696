"""Deterministic 64-bit pseudo-random generator (SplitMix64).

The match RNG must live inside the simulation state as a plain 64-bit
integer so that copying the state copies the randomness and two equal
states always produce equal successors.  SplitMix64 is tiny, passes
BigCrush, and is trivially portable: everything below is integer math
masked to 64 bits.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """One SplitMix64 output step applied to x (stateless finalizer)."""
    x = (x + _GAMMA) & MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def derive_seed(*parts: int) -> int:
    """Fold integer parts into one 64-bit seed.

    Used to give every (run, generation, individual, boss, repetition)
    match its own reproducible seed that does not depend on evaluation
    order.
    """
    acc = 0x243F6A8885A308D3  # arbitrary non-zero start
    for p in parts:
        acc = mix64(acc ^ (p & MASK64))
    return acc


def rng_step(state: int) -> tuple[int, int]:
    """Advance a raw SplitMix64 state once: returns (output, next_state).

    The simulation keeps its generator as a bare int field so states stay
    trivially copyable, hashable, and comparable.
    """
    state = (state + _GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31), state


def rng_below(state: int, n: int) -> tuple[int, int]:
    """Draw a uniform integer in [0, n) from a raw state: (value, next_state)."""
    v, state = rng_step(state)
    return (v * n) >> 64, state


class SplitMix64:
    """Streaming SplitMix64. `state` is the full generator state."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n). Multiply-shift bounding (no modulo bias worth
        caring about at n << 2**64, and branch-free for determinism)."""
        return (self.next_u64() * n) >> 64

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * (self.next_u64() / 2.0**64)

    def gauss(self, sigma: float) -> float:
        """Box-Muller normal draw with standard deviation sigma."""
        import math

        u1 = (self.next_u64() + 1) / (2.0**64 + 1)  # avoid log(0)
        u2 = self.next_u64() / 2.0**64
        return sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def copy(self) -> "SplitMix64":
        return SplitMix64(self.state)
