"""
Pydantic schemas for code selection.
"""
import re
from typing import Literal, Optional
from pydantic import BaseModel, Field, ConfigDict, model_validator

from app.core.exceptions import InvalidParameterError

_CODE_PATTERN = re.compile(
    r"^(?:(?P<hamming>hamming74)"
    r"|(?P<ideal>ideal)"
    r"|(?P<family>repetition|identity):?(?P<length>\d+)"
    r"|random:(?P<n>\d+):(?P<k>\d+):(?P<seed>\d+))$"
)


class CodeSpec(BaseModel):
    """Selection of a concrete code, or of the synthetic Shannon-limit code."""
    
    family: Literal["hamming74", "repetition", "identity", "random", "ideal"]
    n_total: Optional[int] = Field(None, gt=0, description="Block length")
    k_info: Optional[int] = Field(None, gt=0, description="Information length")
    seed: Optional[int] = Field(None, ge=0, description="Seed for random codes")
    
    @model_validator(mode="after")
    def validate_dimensions(self):
        """Validate the dimensions each family needs."""
        if self.family in ("repetition", "identity") and self.n_total is None:
            raise ValueError(f"{self.family} codes need a length")
        if self.family == "random":
            if self.n_total is None or self.k_info is None or self.seed is None:
                raise ValueError("random codes need n_total, k_info and seed")
            if self.k_info > self.n_total:
                raise ValueError(f"k_info={self.k_info} exceeds n_total={self.n_total}")
        return self
    
    @classmethod
    def parse(cls, text: str) -> "CodeSpec":
        """
        Parse a code name.
        
        Accepted forms: hamming74, repetitionN, identityN, random:N:K:SEED, ideal.
        
        Raises:
            InvalidParameterError: If the name matches none of these forms
        """
        match = _CODE_PATTERN.match(text.strip().lower())
        if match is None:
            raise InvalidParameterError(f"unknown code '{text}'")
        if match["hamming"]:
            return cls(family="hamming74")
        if match["ideal"]:
            return cls(family="ideal")
        if match["family"]:
            return cls(family=match["family"], n_total=int(match["length"]))
        return cls(family="random", n_total=int(match["n"]), k_info=int(match["k"]), seed=int(match["seed"]))
    
    def __str__(self) -> str:
        if self.family in ("hamming74", "ideal"):
            return self.family
        if self.family == "random":
            return f"random:{self.n_total}:{self.k_info}:{self.seed}"
        return f"{self.family}{self.n_total}"
    
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"family": "repetition", "n_total": 3}}
    )
