"""
Pydantic schemas for guessing-chain results.
"""
from pydantic import BaseModel, Field, ConfigDict, model_validator

CHAIN_TOLERANCE = 1e-12


class GuessingChain(BaseModel):
    """Adversary guessing probabilities for the sifted, corrected and final keys."""
    
    code: str = Field(..., description="Code used for error correction")
    p1_s: float = Field(..., ge=0.0, le=1.0, description="Average guessing probability of S")
    p1_l: float = Field(..., ge=0.0, le=1.0, description="Average guessing probability of L")
    p1_k: float = Field(..., ge=0.0, le=1.0, description="Average guessing probability of K")
    p1_s_codebook_scale: float = Field(..., description="2^-k_info, the codebook-size guessing scale")
    breach_magnitude: float = Field(..., description="p1_l - p1_s")
    
    @model_validator(mode="after")
    def validate_chain(self):
        """Validate p1_s <= p1_l <= p1_k."""
        if self.p1_s > self.p1_l + CHAIN_TOLERANCE or self.p1_l > self.p1_k + CHAIN_TOLERANCE:
            raise ValueError("guessing chain must satisfy p1_s <= p1_l <= p1_k")
        return self
    
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "code": "repetition3",
                "p1_s": 0.25,
                "p1_l": 1.0,
                "p1_k": 1.0,
                "p1_s_codebook_scale": 0.5,
                "breach_magnitude": 0.75
            }
        }
    )
