"""
Pydantic schemas for distance and guessing results.
"""
from pydantic import BaseModel, Field, ConfigDict


class DistanceSummary(BaseModel):
    """Distance, guessing probability and the 1/N + d bound for a skewed key distribution."""
    
    n_outcomes: int = Field(..., ge=2, description="Number of key values N")
    epsilon: float = Field(..., ge=0.0, le=0.5, description="Skew parameter")
    variational_distance: float = Field(..., description="Distance to the uniform distribution")
    guessing_prob: float = Field(..., description="Largest single-outcome probability")
    theorem1_bound: float = Field(..., description="1/N + distance")
    theorem1_gap: float = Field(..., description="Bound minus guessing probability")
    elevated_fraction: float = Field(..., description="Probability mass on outcomes above 1/N")
    operational_guarantee: float = Field(..., description="distance^(1/3) + 1/N, capped at 1")
    near_uniform: bool = Field(..., description="distance <= 1/N")
    
    model_config = ConfigDict(frozen=True)


class GuessingBoundCheck(BaseModel):
    """Outcome of the guessing bound checked on seeded random ensembles."""
    
    trials: int = Field(..., gt=0)
    seed: int
    max_keys: int
    max_observations: int
    min_gap: float = Field(..., description="Smallest bound-minus-guessing gap observed")
    holds: bool = Field(..., description="min_gap >= -1e-12")
    
    model_config = ConfigDict(frozen=True)
