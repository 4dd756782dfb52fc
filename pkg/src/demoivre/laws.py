"""Operational representations of the laws being probed.

The binomial law is never sampled; it is represented by its atoms, the
standardized support points ``x_k = (k - np)/sqrt(npq)`` together with
their log-weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .exceptions import DomainError
from .numerics import INV_SQRT_2PI, log_binomial_pmf

# Grids larger than this are streamed block by block instead of stored.
EAGER_LIMIT = 10**6
BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class BinomialLaw:
    """Law of the number of successes in ``n`` Bernoulli(``p``) trials."""

    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie strictly between 0 and 1, got {self.p!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))

    @classmethod
    def from_chances(cls, a: float, b: float, n: int) -> "BinomialLaw":
        """Build the law of ``(a+b)^n`` with odds ``a : b``, i.e. ``p = a/(a+b)``."""
        if a <= 0 or b <= 0:
            raise DomainError("chances a and b must be positive")
        return cls(n, a / (a + b))

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def mean(self) -> float:
        return self.n * self.p

    @property
    def variance(self) -> float:
        return self.n * self.p * self.q

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

    @property
    def dx(self) -> float:
        """Spacing of the standardized grid, ``1/sqrt(npq)``."""
        return 1.0 / self.sigma

    def log_weights(self, k) -> np.ndarray:
        return log_binomial_pmf(self.n, k, self.p)

    def standardize(self, k) -> np.ndarray:
        return (np.asarray(k) - self.mean) / self.sigma


@dataclass(frozen=True)
class StandardizedAtom:
    k: int
    offset_l: float
    x: float
    log_weight: float

    @property
    def weight(self) -> float:
        return math.exp(self.log_weight)


class AtomGrid:
    """The ``n + 1`` standardized atoms of a binomial law, in increasing ``k``.

    Arrays are read-only.  Weights are ``exp(log_weight)`` with no
    renormalization.
    """

    def __init__(self, law: BinomialLaw, k: np.ndarray | None = None):
        self.law = law
        if k is None:
            k = np.arange(law.n + 1)
        self.k = k
        self.offset = k - law.mean
        self.x = self.offset / law.sigma
        self.log_weight = law.log_weights(k)
        for arr in (self.k, self.offset, self.x, self.log_weight):
            arr.flags.writeable = False

    @property
    def dx(self) -> float:
        return self.law.dx

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.exp(self.log_weight)
        w.flags.writeable = False
        return w

    def __len__(self) -> int:
        return len(self.k)

    def __iter__(self) -> Iterator[StandardizedAtom]:
        for i in range(len(self.k)):
            yield StandardizedAtom(
                int(self.k[i]), float(self.offset[i]), float(self.x[i]),
                float(self.log_weight[i]),
            )

    def __getitem__(self, i) -> StandardizedAtom:
        return StandardizedAtom(
            int(self.k[i]), float(self.offset[i]), float(self.x[i]),
            float(self.log_weight[i]),
        )

    def __repr__(self):
        return f"AtomGrid(n={self.law.n}, p={self.law.p})"


def atom_grid(law: BinomialLaw) -> AtomGrid:
    """Materialize every atom of ``law``."""
    return AtomGrid(law)


def iter_atom_blocks(law: BinomialLaw, block_size: int | None = None) -> Iterator[AtomGrid]:
    """Yield the atoms of ``law`` in consecutive blocks of increasing ``k``.

    Laws with ``n <= EAGER_LIMIT`` come back as a single block unless
    ``block_size`` is given.
    """
    if block_size is None:
        if law.n + 1 <= EAGER_LIMIT + 1:
            yield AtomGrid(law)
            return
        block_size = BLOCK_SIZE
    for start in range(0, law.n + 1, block_size):
        stop = min(start + block_size, law.n + 1)
        yield AtomGrid(law, np.arange(start, stop))


def gaussian_density(x):
    """Standard normal density ``exp(-x^2/2)/sqrt(2 pi)``."""
    x = np.asarray(x, dtype=float)
    out = INV_SQRT_2PI * np.exp(-0.5 * x * x)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class GaussianReference:
    """The standard normal law, the limit of the standardized binomials."""

    symmetric = True

    def density(self, x):
        return gaussian_density(x)

    @property
    def max_density(self) -> float:
        return INV_SQRT_2PI


@dataclass(frozen=True)
class CauchyLaw:
    """Cauchy law; it has no mean, so classical moments of every order >= 1 diverge."""

    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"scale must be positive, got {self.scale!r}")

    @property
    def symmetric(self) -> bool:
        return self.location == 0.0

    def density(self, x):
        return cauchy_density(self, x)

    @property
    def max_density(self) -> float:
        return 1.0 / (math.pi * self.scale)

    def cdf(self, x) -> float:
        return 0.5 + math.atan((x - self.location) / self.scale) / math.pi


def cauchy_density(law: CauchyLaw, x):
    x = np.asarray(x, dtype=float)
    z = x - law.location
    out = law.scale / (math.pi * (z * z + law.scale * law.scale))
    return out[()] if out.ndim == 0 else out
