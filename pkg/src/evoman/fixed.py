"""Fixed-point arithmetic helpers for the simulation core.

All physics quantities (positions, velocities, box extents) are signed
integers in 1/256-pixel units: 8 fractional bits, so 256 raw units equal
one pixel.  Keeping the whole simulation path on integers makes matches
bit-reproducible across platforms, which the replay verifier relies on.
Raw values stay well inside the signed 32-bit range (positions are clamped
to the arena, velocities to config maxima), so no operation here can
overflow when the state is later packed as int32 for hashing.
"""

from __future__ import annotations

FX_SHIFT = 8
FX_ONE = 1 << FX_SHIFT  # 256 raw units = 1 pixel


def to_fx(pixels: float) -> int:
    """Convert pixels to raw fixed-point units (rounded to nearest)."""
    return round(pixels * FX_ONE)


def fx_to_float(raw: int) -> float:
    """Convert raw fixed-point units to float pixels (exact: power-of-two denominator)."""
    return raw / FX_ONE


def sdiv(a: int, b: int) -> int:
    """Integer division rounding toward zero.

    Python's // floors, which is not odd-symmetric: (-5)//2 == -3 but
    -(5//2) == -2.  Mirror symmetry of the arena requires sdiv(-a, b)
    == -sdiv(a, b), so every signed division in the physics path goes
    through here.
    """
    q = abs(a) // b
    return -q if a < 0 else q


def clamp(v: int, lo: int, hi: int) -> int:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v
