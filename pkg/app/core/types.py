"""
Constrained scalar types shared across modules.
"""
from typing import Annotated
from pydantic import Field

Probability = Annotated[float, Field(ge=0.0, le=1.0)]
BitCount = Annotated[int, Field(ge=0)]
NonNegative = Annotated[float, Field(ge=0.0)]
Positive = Annotated[float, Field(gt=0.0)]
