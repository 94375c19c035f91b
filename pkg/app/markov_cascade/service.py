"""
Markov-inequality failure probabilities and their optimizers.

A single layer with threshold sigma fails with probability
sigma + eps/sigma - eps; two independent layers fail with
1 - (1 - s1)(1 - s2)(1 - eps/(s1 s2)). Optima are found numerically in
log-threshold space and compared against the closed forms.
"""
import logging
import math
from typing import Annotated
from pydantic import Field, validate_call
from scipy.optimize import minimize_scalar

from app.core.types import NonNegative, Positive
from app.markov_cascade.schemas import CascadeResult

logger = logging.getLogger(__name__)

Threshold = Annotated[float, Field(gt=0.0, lt=1.0)]
Epsilon = Annotated[float, Field(gt=0.0, lt=1.0)]

GOLDEN_TOL = 1e-12
MAX_SWEEPS = 100
SWEEP_TOL = 1e-12


def _single(eps: float, sigma: float) -> float:
    if eps > sigma:
        return 1.0
    return min(sigma + eps / sigma - eps, 1.0)


def _double(eps: float, sigma1: float, sigma2: float) -> float:
    if eps > sigma1 * sigma2:
        return 1.0
    return min(1.0 - (1.0 - sigma1) * (1.0 - sigma2) * (1.0 - eps / (sigma1 * sigma2)), 1.0)


def _golden_log(objective, lower: float, seed: float) -> float:
    """
    Minimize objective(exp(t)) over t = ln(sigma) on (lower, 0).
    
    Golden-section search runs when the seed brackets a minimum. Where the
    objective is flat at the cap (eps close to 1) the bracket does not hold
    and a bounded Brent search takes over. The seed is returned whenever the
    search does no better than it.
    """
    def f(t: float) -> float:
        return objective(math.exp(t))
    
    f_seed = f(seed)
    if f_seed < f(lower) and f_seed < f(0.0):
        result = minimize_scalar(f, bracket=(lower, seed, 0.0), method="golden", tol=GOLDEN_TOL)
    else:
        logger.debug(f"seed {seed} does not bracket a minimum on ({lower}, 0); using bounded search")
        result = minimize_scalar(f, bounds=(lower, 0.0), method="bounded", options={"xatol": GOLDEN_TOL})
    
    t = float(result.x)
    if lower < seed < 0.0 and f_seed <= f(t):
        return seed
    return t


@validate_call
def markov_bound(mean: NonNegative, delta: Positive) -> float:
    """Pr[X >= delta] <= E[X] / delta, capped at 1."""
    return min(mean / delta, 1.0)


@validate_call
def failure_single(eps: NonNegative, sigma: Threshold) -> float:
    """Failure probability of one Markov layer at threshold sigma; 1 when eps > sigma."""
    return _single(eps, sigma)


@validate_call
def failure_double(eps: NonNegative, sigma1: Threshold, sigma2: Threshold) -> float:
    """Failure probability of two independent Markov layers; 1 when eps > sigma1 * sigma2."""
    return _double(eps, sigma1, sigma2)


@validate_call
def optimize_single(eps: Epsilon) -> CascadeResult:
    """
    Minimize the single-layer failure probability over sigma in (eps, 1).
    
    Args:
        eps: Average distance bound
    
    Returns:
        CascadeResult: sigma close to sqrt(eps), failure 2 sqrt(eps) - eps
    """
    seed = 0.5 * math.log(eps)
    t = _golden_log(lambda sigma: _single(eps, sigma), math.log(eps), seed)
    sigma = math.exp(t)
    logger.debug(f"single cascade eps={eps}: sigma={sigma} (analytic {math.sqrt(eps)})")
    
    return CascadeResult(
        mode="single",
        epsilon=eps,
        sigma_values=[sigma],
        failure_prob=_single(eps, sigma),
        analytic_optimum=2.0 * math.sqrt(eps),
    )


@validate_call
def optimize_double(eps: Epsilon) -> CascadeResult:
    """
    Minimize the two-layer failure probability by coordinate descent.
    
    Each sweep runs a one-dimensional search on one threshold with the other
    held fixed, starting from the analytic seed eps^(1/3) on both axes.
    
    Args:
        eps: Average distance bound
    
    Returns:
        CascadeResult: sigma1 = sigma2 close to eps^(1/3)
    """
    t1 = t2 = math.log(eps) / 3.0
    for sweep in range(MAX_SWEEPS):
        previous = (t1, t2)
        t1 = _golden_log(lambda s: _double(eps, s, math.exp(t2)), math.log(eps) - t2, t1)
        t2 = _golden_log(lambda s: _double(eps, math.exp(t1), s), math.log(eps) - t1, t2)
        if max(abs(t1 - previous[0]), abs(t2 - previous[1])) < SWEEP_TOL:
            break
    
    sigma1, sigma2 = math.exp(t1), math.exp(t2)
    logger.debug(f"double cascade eps={eps}: sigma=({sigma1}, {sigma2}) after {sweep + 1} sweeps")
    
    return CascadeResult(
        mode="double",
        epsilon=eps,
        sigma_values=[sigma1, sigma2],
        failure_prob=_double(eps, sigma1, sigma2),
        analytic_optimum=3.0 * eps ** (1.0 / 3.0),
    )


@validate_call
def required_distance(target_failure: Annotated[float, Field(gt=0.0, le=1.0)]) -> float:
    """Average distance a double cascade needs for a target failure, (P_f / 3)^3."""
    return (target_failure / 3.0) ** 3
