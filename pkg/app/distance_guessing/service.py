"""
Trace-distance criterion, the guessing bound p1 <= 1/N + d and the guessing chain on classical ensembles.

Quantum states are represented by the measurement statistics they induce, so
every quantity here is a function of probability vectors.
"""
import logging
from typing import Annotated, Sequence
import numpy as np
from pydantic import Field, validate_call

from app.core.exceptions import InvalidParameterError
from app.core.types import Probability
from app.distance_guessing.models import CondEnsemble, Distribution
from app.distance_guessing.schemas import DistanceSummary, GuessingBoundCheck

logger = logging.getLogger(__name__)

GAP_TOLERANCE = 1e-12

KeyCount = Annotated[int, Field(ge=1)]


def _check_same_size(p: Distribution, q: Distribution) -> None:
    if p.n_outcomes != q.n_outcomes:
        raise InvalidParameterError(
            f"distributions range over {p.n_outcomes} and {q.n_outcomes} outcomes"
        )


def variational_distance(p: Distribution, q: Distribution) -> float:
    """
    Half the L1 distance between two distributions on the same outcomes.
    
    Raises:
        InvalidParameterError: If the outcome counts differ
    """
    _check_same_size(p, q)
    return float(0.5 * np.abs(p.probs - q.probs).sum())


@validate_call
def skewed_pair(
    n_outcomes: Annotated[int, Field(ge=2, multiple_of=2)],
    eps: Annotated[float, Field(ge=0.0, le=0.5)],
) -> Distribution:
    """
    First half of the outcomes at (1+2eps)/N, second half at (1-2eps)/N.
    
    Its distance to uniform is exactly eps, yet for eps > 0 every outcome
    differs from 1/N and half of them carry elevated probability.
    """
    half = n_outcomes // 2
    probs = np.concatenate([
        np.full(half, (1.0 + 2.0 * eps) / n_outcomes),
        np.full(half, (1.0 - 2.0 * eps) / n_outcomes),
    ])
    return Distribution(probs)


@validate_call
def equality_case(n_keys: Annotated[int, Field(ge=2)], d: Annotated[float, Field(ge=0.0)]) -> Distribution:
    """
    One outcome at 1/N + d, the remainder spread evenly; attains the guessing bound with equality.
    """
    if d > 1.0 - 1.0 / n_keys:
        raise InvalidParameterError(f"distance {d} is unreachable with {n_keys} outcomes")
    rest = (1.0 - 1.0 / n_keys - d) / (n_keys - 1)
    probs = np.full(n_keys, rest)
    probs[0] = 1.0 / n_keys + d
    return Distribution(probs)


def guessing_prob(p: Distribution) -> float:
    """Largest single-outcome probability."""
    return float(p.probs.max())


def ensemble_guessing_prob(e: CondEnsemble) -> float:
    """Observation-averaged guessing probability sum_y p(y) max_k p(k|y)."""
    return float(e.y_marginal.probs @ e.matrix.max(axis=1))


def ensemble_distance_to_uniform(e: CondEnsemble) -> float:
    """Observation-averaged variational distance of p(.|y) to uniform."""
    per_observation = 0.5 * np.abs(e.matrix - 1.0 / e.n_keys).sum(axis=1)
    return float(e.y_marginal.probs @ per_observation)


def theorem1_gap(e: CondEnsemble) -> float:
    """(1/N + d) - p1_bar; never below -1e-12."""
    return (1.0 / e.n_keys + ensemble_distance_to_uniform(e)) - ensemble_guessing_prob(e)


@validate_call
def d_lower_bound(p1_bar: Probability, n_keys: KeyCount) -> float:
    """
    Smallest distance compatible with an average guessing probability.
    
    Raises:
        InvalidParameterError: If p1_bar < 1/N, which no adversary can achieve
    """
    if p1_bar < 1.0 / n_keys - GAP_TOLERANCE:
        raise InvalidParameterError(f"guessing probability {p1_bar} is below 1/N = {1.0 / n_keys}")
    return max(p1_bar - 1.0 / n_keys, 0.0)


@validate_call
def operational_guarantee(d_avg: Probability, n_keys: KeyCount) -> float:
    """Per-observation guessing guarantee d^(1/3) + 1/N, capped at 1."""
    return float(min(np.cbrt(d_avg) + 1.0 / n_keys, 1.0))


@validate_call
def key_distance_floor(p1_l: Probability, l_len: Annotated[int, Field(ge=0)]) -> float:
    """Distance floor p1(L) - 2^-|L| inherited by any key compressed from L."""
    return p1_l - 2.0 ** (-l_len)


@validate_call
def is_near_uniform(d: Probability, n_keys: KeyCount) -> bool:
    """True when d <= 1/N, the regime where the guessing bound forces near-uniform guessing."""
    return d <= 1.0 / n_keys


def compress_distribution(p: Distribution, mapping: Sequence[int]) -> Distribution:
    """
    Image of a distribution under a deterministic map on outcomes.
    
    Args:
        p: Source distribution
        mapping: mapping[i] is the image of outcome i
        
    Returns:
        Distribution: Over outcomes 0..max(mapping)
    """
    mapping = np.asarray(mapping, dtype=np.int64)
    if mapping.shape != p.probs.shape or np.any(mapping < 0):
        raise InvalidParameterError("mapping must assign a non-negative image to every outcome")
    return Distribution(np.bincount(mapping, weights=p.probs, minlength=int(mapping.max()) + 1))


def random_ensemble(rng: np.random.Generator, n_keys: int, n_observations: int) -> CondEnsemble:
    """Seeded random ensemble with Dirichlet(1) marginal and conditionals."""
    y_marginal = rng.dirichlet(np.ones(n_observations))
    rows = rng.dirichlet(np.ones(n_keys), size=n_observations)
    # Renormalize so each row passes the 1e-12 sum check exactly.
    y_marginal = y_marginal / y_marginal.sum()
    rows = rows / rows.sum(axis=1, keepdims=True)
    return CondEnsemble.from_matrix(y_marginal, rows)


@validate_call
def summarize_skewed(
    n_outcomes: Annotated[int, Field(ge=2, multiple_of=2)],
    eps: Annotated[float, Field(ge=0.0, le=0.5)],
) -> DistanceSummary:
    """Distance, guessing and bound figures for skewed_pair(N, eps)."""
    p = skewed_pair(n_outcomes, eps)
    uniform = Distribution.uniform(n_outcomes)
    d = variational_distance(p, uniform)
    p1 = guessing_prob(p)
    elevated = float(p.probs[p.probs > 1.0 / n_outcomes].sum())
    
    return DistanceSummary(
        n_outcomes=n_outcomes,
        epsilon=eps,
        variational_distance=d,
        guessing_prob=p1,
        theorem1_bound=1.0 / n_outcomes + d,
        theorem1_gap=1.0 / n_outcomes + d - p1,
        elevated_fraction=elevated,
        operational_guarantee=operational_guarantee(d, n_outcomes),
        near_uniform=is_near_uniform(d, n_outcomes),
    )


@validate_call
def check_theorem1(
    trials: Annotated[int, Field(gt=0)],
    seed: int = 0,
    max_keys: Annotated[int, Field(ge=2)] = 16,
    max_observations: Annotated[int, Field(ge=1)] = 16,
) -> GuessingBoundCheck:
    """Check the guessing bound over seeded random ensembles and report the smallest gap."""
    rng = np.random.default_rng(seed)
    min_gap = np.inf
    for _ in range(trials):
        n_keys = int(rng.integers(2, max_keys + 1))
        n_observations = int(rng.integers(1, max_observations + 1))
        min_gap = min(min_gap, theorem1_gap(random_ensemble(rng, n_keys, n_observations)))
    
    logger.info(f"Guessing bound over {trials} ensembles: min gap {min_gap:.3e}")
    return GuessingBoundCheck(
        trials=trials,
        seed=seed,
        max_keys=max_keys,
        max_observations=max_observations,
        min_gap=float(min_gap),
        holds=bool(min_gap >= -GAP_TOLERANCE),
    )
