"""
Closed-form information-theoretic quantities for net-key accounting.

All functions are pure. Logarithms are base 2 and h(0) = h(1) = 0.
"""
import logging
import math
from typing import Annotated, Optional
from pydantic import Field, validate_call
from scipy.optimize import bisect
from scipy.special import entr, gammaln

from app.core.config import settings
from app.core.exceptions import (
    DivergentLeakError,
    EmptyFeasibilityRegionError,
    InvalidParameterError,
    VacuousBoundError,
)
from app.core.types import BitCount, NonNegative, Probability
from app.entropy_rates.schemas import (
    CapacitySummary,
    CodeAudit,
    CodeRate,
    EfficiencyFactor,
    PAExponents,
    Qber,
    RateMode,
    RateReport,
    ThresholdResult,
)

logger = logging.getLogger(__name__)

INVERSE_XTOL = 1e-10
# Key length is H_min / 7: the (H_min - n) / 6 exponent set equal to n.
KEY_LENGTH_DIVISOR = 7
# Net key needs h(Q) < 8 - 7/r, which is empty for r <= 7/8.
MIN_FEASIBLE_RATE = 7 / 8
# Absorbs floating point noise before flooring whole-bit counts.
_FLOOR_SLACK = 1e-9


def _h(p: float) -> float:
    return float((entr(p) + entr(1.0 - p)) / math.log(2))


def _whole_bits(value: float) -> int:
    return math.floor(value + _FLOOR_SLACK)


@validate_call
def binary_entropy(p: Probability) -> float:
    """
    Binary entropy h(p) in bits.
    
    Args:
        p: Probability in [0, 1]
    
    Returns:
        float: -p log2 p - (1-p) log2 (1-p)
    """
    return _h(p)


@validate_call
def binary_entropy_inverse(h_target: Annotated[float, Field(ge=0.0, le=1.0)]) -> float:
    """
    Unique p in [0, 0.5] with h(p) = h_target, found by bisection.
    
    Args:
        h_target: Entropy value in [0, 1]
    
    Returns:
        float: Probability within 1e-10 of the root
    """
    if h_target <= 0.0:
        return 0.0
    if h_target >= 1.0:
        return 0.5
    root = bisect(lambda p: _h(p) - h_target, 0.0, 0.5, xtol=INVERSE_XTOL)
    logger.debug(f"h^-1({h_target}) = {root}")
    return float(root)


@validate_call
def bsc_capacity(e: Probability) -> float:
    """Capacity 1 - h(e) of a memoryless binary symmetric channel."""
    return 1.0 - _h(e)


@validate_call
def naive_capacity(e: Annotated[float, Field(ge=0.0, le=0.5)]) -> float:
    """Rate 1 - 2e obtained by correcting only the number of errors."""
    return 1.0 - 2.0 * e


@validate_call
def error_location_leak(sifted_len: BitCount, q: Probability) -> float:
    """
    Bits needed to name the error positions: log2 C(|S|, round(q|S|)).
    
    Per sifted bit this tends to h(q) as |S| grows.
    """
    errors = round(q * sifted_len)
    log_binomial = gammaln(sifted_len + 1) - gammaln(errors + 1) - gammaln(sifted_len - errors + 1)
    return float(log_binomial / math.log(2))


@validate_call
def leak_ec_heuristic(sifted_len: BitCount, q: Qber, f: Optional[EfficiencyFactor] = None) -> float:
    """
    Heuristic error-correction leak f * |S| * h(Q).
    
    Args:
        sifted_len: Sifted key length |S|
        q: QBER
        f: Efficiency factor, at least 1; settings.efficiency_factor when omitted
    
    Returns:
        float: Leaked bits
    """
    f = settings.efficiency_factor if f is None else f
    return f * sifted_len * _h(q)


@validate_call
def leak_ec_padded(sifted_len: BitCount, q: Probability) -> float:
    """
    One-time-pad bits consumed by padding the parity bits of a capacity-achieving code.
    
    Args:
        sifted_len: Sifted key length |S|
        q: QBER
    
    Returns:
        float: |S| * h(q) / (1 - h(q))
    
    Raises:
        DivergentLeakError: If h(q) = 1
    """
    h_q = _h(q)
    if h_q >= 1.0:
        raise DivergentLeakError(f"padded leak diverges at q={q} (h(q) = 1)")
    return sifted_len * h_q / (1.0 - h_q)


@validate_call
def parity_overhead(sifted_len: BitCount, r: CodeRate) -> float:
    """Parity bits |S| * (1/r - 1) added by a rate-r systematic code."""
    return sifted_len * (1.0 / r - 1.0)


def _min_entropy(sifted_len: int, q: float, mu: float) -> float:
    if q + mu >= 0.5:
        raise VacuousBoundError(f"min-entropy bound is vacuous for q + mu = {q + mu} >= 0.5")
    return sifted_len * (1.0 - _h(q + mu))


@validate_call
def key_length(sifted_len: BitCount, q: Probability, mu: NonNegative = 0.0) -> int:
    """
    Near-uniform key length floor(H_min / 7) with H_min = |S| * (1 - h(q + mu)).
    
    Raises:
        VacuousBoundError: If q + mu >= 0.5
    """
    return _whole_bits(_min_entropy(sifted_len, q, mu) / KEY_LENGTH_DIVISOR)


@validate_call
def net_key_bits(sifted_len: BitCount, q: Probability, r: CodeRate, mu: NonNegative = 0.0) -> int:
    """Generated key bits minus the whole parity bits of a rate-r code; may be negative."""
    return key_length(sifted_len, q, mu) - _whole_bits(parity_overhead(sifted_len, r))


def _h_bound(r: float) -> float:
    return 8.0 - 7.0 / r


@validate_call
def net_key_feasible(q: Probability, r: CodeRate) -> bool:
    """True iff h(q) < 8 - 7/r."""
    return _h(q) < _h_bound(r)


@validate_call
def threshold_qber(rate: RateMode = "shannon") -> ThresholdResult:
    """
    Largest QBER admitting a net key.
    
    In shannon mode r = 1 - h(Q), so h(Q) = x solves x^2 - 9x + 1 = 0.
    In fixed mode the threshold is h^-1(8 - 7/r).
    
    Args:
        rate: "shannon" or a fixed code rate in (0, 1]
    
    Returns:
        ThresholdResult: Threshold QBER and the bound it comes from
    
    Raises:
        EmptyFeasibilityRegionError: If a fixed rate is at most 7/8
    """
    if rate == "shannon":
        h_star = (9.0 - math.sqrt(77.0)) / 2.0
        return ThresholdResult(
            rate_mode="shannon",
            h_bound=h_star,
            qber_max=binary_entropy_inverse(h_star),
            unconstrained=False,
        )
    
    if rate <= MIN_FEASIBLE_RATE:
        raise EmptyFeasibilityRegionError(f"empty feasibility region (r ≤ 7/8), got r={rate}")
    
    bound = _h_bound(rate)
    qber_max = binary_entropy_inverse(min(bound, 1.0))
    return ThresholdResult(
        rate_mode="fixed",
        code_rate=rate,
        h_bound=bound,
        qber_max=qber_max,
        unconstrained=bound >= 1.0,
    )


@validate_call
def pa_exponents(h_min: NonNegative, n: BitCount) -> PAExponents:
    """
    Distance exponents after privacy amplification of H_min bits down to n bits.
    
    The leftover hash exponent is (H_min - n)/2; the cube root needed for an
    operational guarantee leaves (H_min - n)/6, which must reach n.
    """
    lhl = (h_min - n) / 2.0
    operational = (h_min - n) / 6.0
    return PAExponents(
        lhl_exponent=lhl,
        operational_exponent=operational,
        near_uniform=operational >= n,
    )


@validate_call
def rate_report(
    sifted_len: BitCount,
    q: Qber,
    code_rate: RateMode = "shannon",
    f: Optional[EfficiencyFactor] = None,
    mu: Optional[NonNegative] = None,
) -> RateReport:
    """
    Assemble every accounting quantity for one (|S|, Q, r, f, mu) point.
    
    In shannon mode the code rate is 1 - h(Q), so the parity bits equal the padded leak.
    f and mu fall back to settings.efficiency_factor and settings.mu.
    """
    f = settings.efficiency_factor if f is None else f
    mu = settings.mu if mu is None else mu
    
    h_q = _h(q)
    r = 1.0 - h_q if code_rate == "shannon" else code_rate
    h_min = _min_entropy(sifted_len, q, mu)
    key_len = _whole_bits(h_min / KEY_LENGTH_DIVISOR)
    parity = _whole_bits(parity_overhead(sifted_len, r))
    
    return RateReport(
        sifted_len=sifted_len,
        qber=q,
        f_factor=f,
        mu=mu,
        code_rate=r,
        h_q=h_q,
        leak_heuristic=f * sifted_len * h_q,
        leak_padded=leak_ec_padded(sifted_len, q),
        parity_bits=parity,
        h_min=h_min,
        key_len_n=key_len,
        net_bits=key_len - parity,
        feasible=h_q < _h_bound(r),
    )


@validate_call
def audit_code(
    n_total: Annotated[int, Field(gt=0)],
    k_info: Annotated[int, Field(gt=0)],
    operating_qber: Probability,
) -> CodeAudit:
    """
    Verdict on whether a concrete (n_total, k_info) code can yield a net key.
    
    Raises:
        InvalidParameterError: If k_info exceeds n_total
    """
    if k_info > n_total:
        raise InvalidParameterError(f"k_info={k_info} exceeds n_total={n_total}; check the (n, k) order")
    
    rate = k_info / n_total
    bound = _h_bound(rate)
    qber_max = None
    if rate > MIN_FEASIBLE_RATE:
        qber_max = binary_entropy_inverse(min(bound, 1.0))
    
    verdict = "FEASIBLE" if _h(operating_qber) < bound else "INFEASIBLE"
    logger.info(f"Audit ({n_total}, {k_info}) rate={rate:.6f} bound={bound:.6f} -> {verdict}")
    
    return CodeAudit(
        n_total=n_total,
        k_info=k_info,
        rate=rate,
        h_bound=bound,
        qber_max=qber_max,
        operating_qber=operating_qber,
        verdict=verdict,
    )


@validate_call
def capacity_summary(q: Annotated[float, Field(ge=0.0, le=0.5)], sifted_len: Annotated[int, Field(gt=0)]) -> CapacitySummary:
    """Compare the BSC capacity, the error-count rate and the error-location leak."""
    leak = error_location_leak(sifted_len, q)
    return CapacitySummary(
        qber=q,
        sifted_len=sifted_len,
        h_q=_h(q),
        bsc_capacity=1.0 - _h(q),
        naive_capacity=1.0 - 2.0 * q,
        error_location_leak=leak,
        error_location_leak_per_bit=leak / sifted_len,
    )
