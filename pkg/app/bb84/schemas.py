"""
Pydantic schemas for protocol configuration, ledgers and reports.
"""
from typing import Literal, Optional
from pydantic import BaseModel, Field, ConfigDict, field_serializer, field_validator, model_validator

from app.core.config import settings
from app.entropy_rates.schemas import Qber
from app.gf2_codes.schemas import CodeSpec

EccMode = Literal["padded", "syndrome"]
AttackModel = Literal["collective", "joint"]


def _parse_code(value):
    if isinstance(value, str):
        return CodeSpec.parse(value)
    return value


class ProtocolConfig(BaseModel):
    """One desk-scale BB84 run."""
    
    raw_len: int = Field(..., ge=64, description="Transmitted qubits")
    qber: Qber = Field(..., description="Channel flip probability on sifted bits")
    check_fraction: float = Field(
        default_factory=lambda: settings.check_fraction,
        gt=0.0,
        lt=1.0,
        description="Fraction of sifted bits sacrificed for the QBER estimate"
    )
    code_spec: CodeSpec = Field(default_factory=lambda: CodeSpec(family="hamming74"), description="Error-correcting code")
    ecc_mode: EccMode = Field("padded", description="padded sends one-time padded parity, syndrome sends it in the clear")
    mu: float = Field(default_factory=lambda: settings.mu, ge=0.0, description="Finite-size QBER correction")
    rng_seed: int = Field(0, ge=0, description="Seed of the run's random generator")
    attack: AttackModel = Field("collective", description="Adversary model")
    
    @field_validator("code_spec", mode="before")
    @classmethod
    def validate_code_spec(cls, v):
        """Validate that the code selection parses."""
        return _parse_code(v)
    
    @field_serializer("code_spec")
    def serialize_code_spec(self, code_spec: CodeSpec) -> str:
        return str(code_spec)
    
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "raw_len": 4096,
                "qber": 0.01,
                "check_fraction": 0.25,
                "code_spec": "hamming74",
                "ecc_mode": "padded",
                "mu": 0.0,
                "rng_seed": 7,
                "attack": "collective"
            }
        }
    )


class KeyLedger(BaseModel):
    """Secret-bit accounting of one run."""
    
    sifted_bits: int = Field(..., ge=0, description="Bits surviving basis matching")
    check_bits_revealed: int = Field(..., ge=0, description="Sifted bits disclosed to estimate the QBER")
    check_bits_spent: int = Field(0, ge=0, description="Pre-shared secret bits consumed by checking")
    discarded_bits: int = Field(..., ge=0, description="Remainder shorter than one code block")
    corrected_bits: int = Field(..., ge=0, description="Length of the corrected key L")
    pad_bits_spent: int = Field(..., ge=0, description="Pre-shared secret bits used to pad parity bits")
    key_bits_generated: int = Field(..., ge=0, description="Length of the final key K")
    net_bits: int = Field(..., description="Generated key bits minus pre-shared bits consumed")
    residual_errors: int = Field(..., ge=0, description="Bits of L where the two parties still disagree")
    
    @model_validator(mode="after")
    def validate_conservation(self):
        """Validate that net_bits + pad_bits_spent + check_bits_spent = key_bits_generated."""
        if self.net_bits + self.pad_bits_spent + self.check_bits_spent != self.key_bits_generated:
            raise ValueError("ledger does not conserve secret bits")
        return self
    
    model_config = ConfigDict(frozen=True)


class ProtocolReport(BaseModel):
    """Outcome of one run: ledger, QBER estimate and feasibility cross-check."""
    
    config: ProtocolConfig
    ledger: KeyLedger
    configured_qber: float = Field(..., description="Channel flip probability")
    measured_qber: float = Field(..., ge=0.0, le=1.0, description="QBER measured on the check bits")
    correction_ok: bool = Field(..., description="Every block decoded to the sender's information bits")
    code_rate: float = Field(..., gt=0.0, le=1.0, description="Rate of the code used")
    feasibility_prediction: bool = Field(..., description="Closed-form net key prediction at the configured QBER and rate")
    mode_warning: Optional[str] = Field(None, description="Set when parity bits are disclosed unpadded")
    key_fingerprint: str = Field(..., description="SHA-256 of the final key bits")
    
    @model_validator(mode="after")
    def validate_mode_warning(self):
        """Validate that the warning is present exactly in syndrome mode."""
        if (self.mode_warning is not None) != (self.config.ecc_mode == "syndrome"):
            raise ValueError("mode_warning must be present exactly in syndrome mode")
        return self
    
    model_config = ConfigDict(frozen=True)


class SweepGrid(BaseModel):
    """Cartesian grid of QBER, code and mode, run from one base seed."""
    
    qbers: list[Qber] = Field(..., min_length=1)
    codes: list[CodeSpec] = Field(..., min_length=1)
    modes: list[EccMode] = Field(default_factory=lambda: ["padded"], min_length=1)
    raw_len: int = Field(..., ge=64)
    base_seed: int = Field(0, ge=0)
    check_fraction: float = Field(default_factory=lambda: settings.check_fraction, gt=0.0, lt=1.0)
    mu: float = Field(default_factory=lambda: settings.mu, ge=0.0)
    
    @field_validator("codes", mode="before")
    @classmethod
    def validate_codes(cls, v):
        """Validate that every code selection parses."""
        return [_parse_code(item) for item in v]
    
    model_config = ConfigDict(frozen=True)
