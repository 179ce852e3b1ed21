"""Seeded sampling from ``S = {1, ..., set_size}`` and randomized matrix checks.

Random streams are Philox generators keyed by ``(seed, purpose, index)``.
Purposes::

    0  change-of-variables matrices (index = trial)
    1  evaluation points for the derivative matrix (index = trial)
    2  commutativity test coefficients (index = trial)
    3  verification points for reconstruction (index = attempt)
    4  zero probe of an input blackbox
    5  auxiliary lift column for two-variable inputs (index = trial)

Keys are folded into ``SeedSequence.spawn_key`` so any stream can be rebuilt
without replaying the others.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactla import Matrix, as_matrix, commutes

CHANGE_OF_VARIABLES = 0
DERIVATIVE_POINTS = 1
COMMUTATIVITY = 2
VERIFICATION = 3
ZERO_PROBE = 4
LIFT_COLUMN = 5

DEFAULT_SET_SIZE = 2**31
_MAX_SET_SIZE = 2**63 - 1


@dataclass(frozen=True)
class SampleConfig:
    set_size: int = DEFAULT_SET_SIZE
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if int(self.set_size) != self.set_size or not 2 <= self.set_size <= _MAX_SET_SIZE:
            raise ValueError(f"set_size must be an integer in [2, 2^63-1], got {self.set_size}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit nonnegative integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def stream(self, purpose: int, index: int = 0) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(purpose, index))
        return np.random.Generator(np.random.Philox(ss))

    def draw(self, rng: np.random.Generator, count: int) -> list[int]:
        """``count`` i.i.d. uniform samples from ``S`` as Python ints."""
        vals = rng.integers(1, self.set_size, size=count, endpoint=True, dtype=np.int64)
        return [int(v) for v in vals]


def random_matrix(n: int, cfg: SampleConfig, rng: np.random.Generator | None = None, cols: int | None = None) -> Matrix:
    """``n x cols`` matrix (square by default) with i.i.d. entries from ``S``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cols = n if cols is None else cols
    rng = rng if rng is not None else cfg.stream(CHANGE_OF_VARIABLES, 0)
    flat = cfg.draw(rng, n * cols)
    return Matrix.from_int_rows([flat[i * cols:(i + 1) * cols] for i in range(n)])


def random_combination(family: Sequence[Matrix], coeffs: Sequence[int]) -> Matrix:
    acc = None
    for c, m in zip(coeffs, family):
        term = m * c
        acc = term if acc is None else acc + term
    return acc


def family_commutes_randomized(family: Sequence, cfg: SampleConfig, rng: np.random.Generator | None = None) -> bool:
    """One-sided randomized check that a matrix family commutes pairwise.

    Two random combinations with coefficients from ``S`` are compared.  A
    commuting family is always accepted; a non-commuting one slips through
    with probability at most ``2 / set_size``.
    """
    mats = [as_matrix(m) for m in family]
    if len(mats) <= 1:
        return True
    shape = mats[0].shape
    if shape[0] != shape[1] or any(m.shape != shape for m in mats):
        raise ValueError("family members must be square and of equal size")
    rng = rng if rng is not None else cfg.stream(COMMUTATIVITY, 0)
    k = len(mats)
    coeffs = cfg.draw(rng, 2 * k)
    a = random_combination(mats, coeffs[:k])
    b = random_combination(mats, coeffs[k:])
    return commutes(a, b)


def exact_family_commutes(family: Sequence) -> bool:
    """Deterministic pairwise check, for testing the randomized one."""
    mats = [as_matrix(m) for m in family]
    return all(commutes(mats[i], mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats)))


def random_rational_point(n: int, cfg: SampleConfig, rng: np.random.Generator) -> list[Fraction]:
    return [Fraction(v) for v in cfg.draw(rng, n)]
