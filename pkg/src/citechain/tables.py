"""Log-space probability tables, the exchange format between evaluators.

Probabilities are stored as natural logs so that deep tails (far below the
smallest normal float) survive intact; `probs` exponentiates on demand and
may legitimately underflow to 0.0 for display purposes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["PmfTable"]


@dataclass(frozen=True)
class PmfTable:
    """Indexed run of probabilities plus the mass remaining past the table.

    `log_probs[i]` is ln P{X = start + i}; `log_tail` is ln of the remaining
    mass (``-inf`` for an exactly exhausted law).
    """

    start: int
    log_probs: np.ndarray
    log_tail: float = field(default=-math.inf)

    def __post_init__(self) -> None:
        arr = np.asarray(self.log_probs, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("log_probs must be one-dimensional")
        object.__setattr__(self, "log_probs", arr)

    def __len__(self) -> int:
        return self.log_probs.size

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.start + len(self), dtype=np.int64)

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)

    @property
    def tail(self) -> float:
        return math.exp(self.log_tail) if self.log_tail > -math.inf else 0.0

    def log_prob(self, n: int) -> float:
        i = n - self.start
        if not 0 <= i < len(self):
            raise IndexError(f"index {n} outside table range")
        return float(self.log_probs[i])

    def total_mass(self) -> float:
        return float(math.fsum(self.probs) + self.tail)
