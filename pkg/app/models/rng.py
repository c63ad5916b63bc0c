"""
Seeded randomness.

All draws go through numpy's PCG64 bit generator, whose algorithm and
stream are stable across platforms, so a seed fully determines a
configuration. Child seeds are derived as ``seed XOR splitmix64(index)``.
"""
from fractions import Fraction
from typing import List

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    return (seed ^ splitmix64(index)) & MASK64


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & MASK64))


def random_integers(rng: np.random.Generator, bound: int, size: int) -> List[int]:
    """size integers drawn uniformly from [-bound, bound]."""
    return [int(v) for v in rng.integers(-bound, bound, size=size, endpoint=True)]


def random_rationals(rng: np.random.Generator, bound: int, denominator_bound: int,
                     size: int) -> List[Fraction]:
    nums = rng.integers(-bound, bound, size=size, endpoint=True)
    dens = rng.integers(1, denominator_bound, size=size, endpoint=True)
    return [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]
