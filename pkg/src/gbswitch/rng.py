"""Deterministic seed derivation and sign sampling.

Every randomized routine derives per-task seeds through ``mix``, so a run
is a pure function of its root seed and task indices: results never depend
on worker count or scheduling order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    # SplitMix64 finalizer; full-avalanche 64-bit mixer.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def mix(*parts: int) -> int:
    """Fold integers into one 64-bit seed: h0 = 0, hi = splitmix64(h(i-1) XOR part_i)."""
    h = 0
    for part in parts:
        h = _splitmix64((h ^ part) & _MASK64)
    return h


def generator(*parts: int) -> np.random.Generator:
    """PCG64 generator seeded with ``mix(*parts)``."""
    return np.random.Generator(np.random.PCG64(mix(*parts)))


def sign_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform vector in {-1, +1}^n, dtype int8."""
    return rng.integers(0, 2, size=n, dtype=np.int8) * 2 - 1
