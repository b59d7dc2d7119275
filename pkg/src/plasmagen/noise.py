"""Stateless position-hashed integer noise.

Every value is a pure function of (master seed, level, row, col), so any
two generators fed the same field draw identical values regardless of
evaluation order.  Cells with both coordinates even are always zero:
those are the positions that already existed before an expansion step.

This module deliberately has no other in-package dependencies so that
the reference implementations can share the noise source without
touching the pull-array machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

_MASK64 = (1 << 64) - 1

_LEVEL_SALT = 0x9E3779B97F4A7C15
_ROW_SALT = 0xC2B2AE3D27D4EB4F
_COL_SALT = 0x165667B19E3779F9


def _mix64(z: int) -> int:
    """splitmix64 finalizer; all arithmetic wraps at 64 bits."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


@dataclass(frozen=True)
class NoiseField:
    """Uniform integer noise on [-amplitude, amplitude], keyed by position."""

    master_seed: int
    amplitude: int

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed <= _MASK64:
            raise ValueError("NoiseField: master_seed must fit in 64 bits")
        if self.amplitude < 0:
            raise ValueError("NoiseField: amplitude must be >= 0")


def noise_at(nf: NoiseField, level: int, i: int, j: int) -> int:
    """Noise value at (level, i, j); zero whenever i and j are both even."""
    if not (i & 1) and not (j & 1):
        return 0
    amp = nf.amplitude
    if amp == 0:
        return 0
    h = nf.master_seed
    h = _mix64(h ^ ((level * _LEVEL_SALT) & _MASK64))
    h = _mix64(h ^ ((i * _ROW_SALT) & _MASK64))
    h = _mix64(h ^ ((j * _COL_SALT) & _MASK64))
    return h % (2 * amp + 1) - amp
