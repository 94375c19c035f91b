"""
Distributions and conditional ensembles as immutable numpy-backed values.
"""
from dataclasses import dataclass
from typing import Sequence
import numpy as np

from app.core.exceptions import InvalidParameterError

SUM_TOLERANCE = 1e-12


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Distribution:
    """Finite probability vector over outcome indices 0..N-1."""
    
    probs: np.ndarray
    
    def __post_init__(self):
        probs = _frozen_array(self.probs)
        if probs.ndim != 1 or probs.size == 0:
            raise InvalidParameterError("a distribution needs a non-empty 1-d probability vector")
        if np.any(probs < 0):
            raise InvalidParameterError("probabilities must be non-negative")
        if abs(probs.sum() - 1.0) > SUM_TOLERANCE:
            raise InvalidParameterError(f"probabilities sum to {probs.sum()!r}, not 1")
        object.__setattr__(self, "probs", probs)
    
    @classmethod
    def uniform(cls, n_outcomes: int) -> "Distribution":
        return cls(np.full(n_outcomes, 1.0 / n_outcomes))
    
    @classmethod
    def point_mass(cls, n_outcomes: int, outcome: int = 0) -> "Distribution":
        probs = np.zeros(n_outcomes)
        probs[outcome] = 1.0
        return cls(probs)
    
    @property
    def n_outcomes(self) -> int:
        return int(self.probs.size)
    
    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)
    
    def __repr__(self) -> str:
        return f"<Distribution(n_outcomes={self.n_outcomes}, probs={self.probs.tolist()})>"


@dataclass(frozen=True, eq=False)
class CondEnsemble:
    """
    Marginal over adversary observations plus one key distribution per observation.
    
    Classical stand-in for the joint key/adversary state: observation y occurs
    with probability y_marginal[y] and then the key follows conditionals[y].
    """
    
    y_marginal: Distribution
    conditionals: tuple[Distribution, ...]
    
    def __post_init__(self):
        conditionals = tuple(self.conditionals)
        if len(conditionals) != self.y_marginal.n_outcomes:
            raise InvalidParameterError(
                f"{len(conditionals)} conditionals for {self.y_marginal.n_outcomes} observations"
            )
        sizes = {conditional.n_outcomes for conditional in conditionals}
        if len(sizes) != 1:
            raise InvalidParameterError("all conditionals must range over the same key set")
        object.__setattr__(self, "conditionals", conditionals)
    
    @classmethod
    def from_matrix(cls, y_marginal: Sequence[float], conditional_rows: np.ndarray) -> "CondEnsemble":
        """Build from a marginal vector and a |Y| x N row-stochastic matrix."""
        return cls(
            y_marginal=Distribution(y_marginal),
            conditionals=tuple(Distribution(row) for row in np.asarray(conditional_rows)),
        )
    
    @classmethod
    def single(cls, conditional: Distribution) -> "CondEnsemble":
        """Ensemble with one certain observation."""
        return cls(y_marginal=Distribution([1.0]), conditionals=(conditional,))
    
    @property
    def n_keys(self) -> int:
        return self.conditionals[0].n_outcomes
    
    @property
    def n_observations(self) -> int:
        return self.y_marginal.n_outcomes
    
    @property
    def matrix(self) -> np.ndarray:
        """Conditional probabilities p(k|y) as a |Y| x N array."""
        return np.vstack([conditional.probs for conditional in self.conditionals])
    
    def __repr__(self) -> str:
        return f"<CondEnsemble(n_observations={self.n_observations}, n_keys={self.n_keys})>"
