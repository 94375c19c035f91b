"""
Domain exceptions raised by the accounting and simulation services.
"""


class DomainError(ValueError):
    """Base class for errors that make a requested quantity undefined."""
    
    error_code = "DOMAIN_ERROR"
    
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message
    
    def __str__(self) -> str:
        return self.message


class InvalidParameterError(DomainError):
    """A parameter lies outside the range where the operation is defined."""
    
    error_code = "INVALID_PARAMETER"


class EmptyFeasibilityRegionError(DomainError):
    """No QBER admits a net key at the requested code rate."""
    
    error_code = "EMPTY_FEASIBILITY_REGION"


class VacuousBoundError(DomainError):
    """The min-entropy bound gives nothing because q + mu >= 0.5."""
    
    error_code = "VACUOUS_BOUND"


class DivergentLeakError(DomainError):
    """The padded leak diverges because h(q) = 1."""
    
    error_code = "DIVERGENT_LEAK"


class DeskScaleLimitError(DomainError):
    """An exhaustive enumeration would exceed desk-scale sizes."""
    
    error_code = "DESK_SCALE_LIMIT"


class DegenerateSiftError(DomainError):
    """Too few sifted bits survive to fill a single code block."""
    
    error_code = "DEGENERATE_SIFT"


class UnsupportedAttackError(DomainError):
    """The requested attack model has no quantified key rate."""
    
    error_code = "UNSUPPORTED_ATTACK"
