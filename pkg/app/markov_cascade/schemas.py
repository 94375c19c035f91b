"""
Pydantic schemas for Markov cascade results.
"""
from typing import Literal
from pydantic import BaseModel, Field, ConfigDict, field_validator


class CascadeResult(BaseModel):
    """Optimized thresholds and failure probability of a Markov cascade."""
    
    mode: Literal["single", "double"]
    epsilon: float = Field(..., gt=0.0, lt=1.0, description="Average distance bound")
    sigma_values: list[float] = Field(..., min_length=1, max_length=2, description="Markov thresholds")
    failure_prob: float = Field(..., ge=0.0, le=1.0, description="Failure probability at the thresholds")
    analytic_optimum: float = Field(..., description="Small-epsilon asymptote 2 eps^(1/2) or 3 eps^(1/3)")
    
    @field_validator("sigma_values")
    @classmethod
    def validate_sigma_values(cls, v):
        """Validate that every threshold lies in (0, 1)."""
        if any(not 0.0 < sigma < 1.0 for sigma in v):
            raise ValueError("thresholds must lie in (0, 1)")
        return v
    
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "mode": "double",
                "epsilon": 1e-6,
                "sigma_values": [0.01, 0.01],
                "failure_prob": 0.029701,
                "analytic_optimum": 0.03
            }
        }
    )
