"""Schmidt spectra: the probabilities of the entangled resource.

A spectrum is an ordered tuple of strictly positive probabilities summing to
one.  When constructed from rationals it additionally carries the exact
values, which downstream code (partition search, bound reports) uses to avoid
tolerance ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

SUM_TOL = 1e-12


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, tuple) and len(value) == 2:
        return Fraction(value[0], value[1])
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Ordered non-zero probabilities p_k of a bipartite pure resource."""

    probs: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if len(self.probs) == 0:
            raise ValueError("spectrum must contain at least one probability")
        if any(p <= 0.0 for p in self.probs):
            raise ValueError("all probabilities must be strictly positive")
        if self.exact is not None:
            if len(self.exact) != len(self.probs):
                raise ValueError("exact values must match probs in length")
            if any(f <= 0 for f in self.exact):
                raise ValueError("all exact probabilities must be strictly positive")
            if sum(self.exact) != 1:
                raise ValueError(f"exact probabilities sum to {sum(self.exact)}, not 1")
            if any(float(f) != p for f, p in zip(self.exact, self.probs)):
                raise ValueError("probs must be the floating images of the exact values")
        elif abs(sum(self.probs) - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {sum(self.probs)!r}, not 1")

    @classmethod
    def from_probs(cls, probs: Iterable[float]) -> "SchmidtSpectrum":
        return cls(tuple(float(p) for p in probs))

    @classmethod
    def from_rationals(cls, values: Sequence) -> "SchmidtSpectrum":
        exact = tuple(_as_fraction(v) for v in values)
        return cls(tuple(float(f) for f in exact), exact)

    @property
    def n(self) -> int:
        """Schmidt number of the resource (count of non-zero probabilities)."""
        return len(self.probs)

    @property
    def p_max(self) -> float:
        return max(self.probs)

    @property
    def p_max_exact(self) -> Fraction | None:
        return max(self.exact) if self.exact is not None else None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def is_uniform(self, tol: float = 1e-12) -> bool:
        if self.exact is not None:
            return all(f == Fraction(1, self.n) for f in self.exact)
        return max(abs(p - 1.0 / self.n) for p in self.probs) <= tol

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)
