"""
Pydantic schemas for rate accounting results.
"""
from typing import Annotated, Literal, Optional, Union
from pydantic import BaseModel, Field, ConfigDict, model_validator

Qber = Annotated[float, Field(ge=0.0, lt=0.5, description="Quantum bit error rate")]
CodeRate = Annotated[float, Field(gt=0.0, le=1.0, description="Rate k/n of a linear code")]
EfficiencyFactor = Annotated[float, Field(ge=1.0, description="Reconciliation efficiency f")]
RateMode = Union[Literal["shannon"], CodeRate]


class RateReport(BaseModel):
    """All leak, key-length and feasibility quantities for one operating point."""
    
    sifted_len: int = Field(..., ge=0, description="Sifted key length |S|")
    qber: Qber
    f_factor: EfficiencyFactor
    mu: float = Field(..., ge=0.0, description="Finite-size QBER correction")
    code_rate: CodeRate
    h_q: float = Field(..., description="Binary entropy h(Q)")
    leak_heuristic: float = Field(..., description="f * |S| * h(Q)")
    leak_padded: float = Field(..., description="|S| * h(Q) / (1 - h(Q))")
    parity_bits: int = Field(..., ge=0, description="Whole parity bits |S| * (1/r - 1)")
    h_min: float = Field(..., description="Min-entropy bound |S| * (1 - h(Q + mu))")
    key_len_n: int = Field(..., ge=0, description="Generated key length floor(H_min / 7)")
    net_bits: int = Field(..., description="Generated key bits minus parity bits")
    feasible: bool = Field(..., description="h(Q) < 8 - 7/r")
    
    @model_validator(mode="after")
    def validate_net_bits(self):
        """Validate that net_bits is the key length minus parity bits."""
        if self.net_bits != self.key_len_n - self.parity_bits:
            raise ValueError("net_bits must equal key_len_n - parity_bits")
        return self
    
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "sifted_len": 100000,
                "qber": 0.01,
                "f_factor": 1.1,
                "mu": 0.0,
                "code_rate": 0.95,
                "h_q": 0.0807931,
                "leak_heuristic": 8887.24,
                "leak_padded": 8789.4,
                "parity_bits": 5263,
                "h_min": 91920.7,
                "key_len_n": 13131,
                "net_bits": 7868,
                "feasible": True
            }
        }
    )


class PAExponents(BaseModel):
    """Privacy-amplification distance exponents for a key of length n."""
    
    lhl_exponent: float = Field(..., description="(H_min - n) / 2")
    operational_exponent: float = Field(..., description="(H_min - n) / 6")
    near_uniform: bool = Field(..., description="operational_exponent >= n")
    
    model_config = ConfigDict(frozen=True)


class ThresholdResult(BaseModel):
    """Largest QBER that still admits a net key."""
    
    rate_mode: Literal["shannon", "fixed"]
    code_rate: Optional[float] = Field(None, description="Fixed code rate, absent in shannon mode")
    h_bound: float = Field(..., description="Right-hand side 8 - 7/r")
    qber_max: float = Field(..., description="Threshold QBER")
    unconstrained: bool = Field(..., description="True when every QBER below 0.5 is feasible")
    
    model_config = ConfigDict(frozen=True)


class CodeAudit(BaseModel):
    """Feasibility verdict for a concrete (n_total, k_info) code."""
    
    n_total: int = Field(..., gt=0)
    k_info: int = Field(..., gt=0)
    rate: float
    h_bound: float
    qber_max: Optional[float] = Field(None, description="Absent when the feasibility region is empty")
    operating_qber: float
    verdict: Literal["FEASIBLE", "INFEASIBLE"]
    
    model_config = ConfigDict(frozen=True)


class CapacitySummary(BaseModel):
    """Channel capacity views for one QBER."""
    
    qber: float
    sifted_len: int
    h_q: float
    bsc_capacity: float
    naive_capacity: float
    error_location_leak: float
    error_location_leak_per_bit: float
    
    model_config = ConfigDict(frozen=True)
