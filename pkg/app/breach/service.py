"""
Guessing chain p1(S|y) <= p1(L|y) <= p1(K|y) computed by exhaustive enumeration.

Every scenario is reduced to weighted (s, y) pairs; the guessing probability
of any function f(S) is sum_y max_x P(f(S) = x, Y = y).
"""
import logging
from typing import Optional
import numpy as np

from app.breach.models import BreachEnsemble
from app.breach.schemas import GuessingChain
from app.core.exceptions import DeskScaleLimitError, InvalidParameterError
from app.distance_guessing.models import CondEnsemble, Distribution
from app.gf2_codes.models import LinearCode, ToeplitzHash, enumerate_words
from app.gf2_codes.service import decode_blocks, make_code

logger = logging.getLogger(__name__)

MAX_SIFTED_BITS = 20


def _words_to_int(words: np.ndarray) -> np.ndarray:
    if words.shape[1] == 0:
        return np.zeros(words.shape[0], dtype=np.int64)
    powers = 1 << np.arange(words.shape[1] - 1, -1, -1, dtype=np.int64)
    return words.astype(np.int64) @ powers


def _guessing(values: np.ndarray, observations: np.ndarray, weights: np.ndarray) -> float:
    """sum_y max_x P(X = x, Y = y) over weighted (x, y) pairs."""
    radix = int(values.max()) + 1
    keys = observations.astype(np.int64) * radix + values.astype(np.int64)
    unique_keys, inverse = np.unique(keys, return_inverse=True)
    mass = np.bincount(inverse.reshape(-1), weights=weights)
    unique_observations = unique_keys // radix
    starts = np.concatenate([[0], np.flatnonzero(np.diff(unique_observations)) + 1])
    return min(float(np.maximum.reduceat(mass, starts).sum()), 1.0)


def _check_sifted_size(n_bits: int) -> None:
    if n_bits > MAX_SIFTED_BITS:
        raise DeskScaleLimitError(f"exhaustive enumeration over 2^{n_bits} words exceeds desk scale")


def _check_pac(code: LinearCode, pac: Optional[ToeplitzHash]) -> None:
    if pac is not None and pac.n_in != code.k_info:
        raise InvalidParameterError(f"hash input length {pac.n_in} does not match k_info={code.k_info}")


def _key_values(code: LinearCode, pac: Optional[ToeplitzHash]) -> np.ndarray:
    """K as an integer for every information word L (identity when pac is None)."""
    infos = enumerate_words(code.k_info)
    if pac is None:
        return _words_to_int(infos)
    hashed = (infos.astype(np.int64) @ pac.matrix.T.astype(np.int64)) % 2
    return _words_to_int(hashed)


def _chain(
    code: LinearCode,
    pac: Optional[ToeplitzHash],
    s_index: np.ndarray,
    observations: np.ndarray,
    weights: np.ndarray,
    l_of_s: np.ndarray,
) -> GuessingChain:
    k_of_l = _key_values(code, pac)
    p1_s = _guessing(s_index, observations, weights)
    p1_l = _guessing(l_of_s[s_index], observations, weights)
    p1_k = _guessing(k_of_l[l_of_s[s_index]], observations, weights)
    return GuessingChain(
        code=code.label,
        p1_s=p1_s,
        p1_l=p1_l,
        p1_k=p1_k,
        p1_s_codebook_scale=2.0 ** (-code.k_info),
        breach_magnitude=p1_l - p1_s,
    )


def _decoded_infos(code: LinearCode) -> np.ndarray:
    """Information word (as integer) the decoder returns for every sifted word."""
    _check_sifted_size(code.n_total)
    infos, _, _ = decode_blocks(code, enumerate_words(code.n_total))
    return _words_to_int(infos)


def build_breach_ensemble(code: LinearCode) -> BreachEnsemble:
    """
    Partition all 2^n_total sifted words into decoding regions.
    
    Raises:
        DeskScaleLimitError: If n_total > 20
    """
    ensemble = BreachEnsemble(code=code, observation_map=_decoded_infos(code))
    logger.info(f"Breach ensemble for {code}: group sizes {sorted(set(ensemble.group_sizes.tolist()))}")
    return ensemble


def guessing_chain(e: BreachEnsemble, pac: Optional[ToeplitzHash] = None) -> GuessingChain:
    """
    Guessing chain when the adversary observes the decoding region of S.
    
    Since L is the decoded information word, it is fixed by the observation and p1_l = 1.
    
    Raises:
        InvalidParameterError: If the hash input length differs from k_info
    """
    _check_pac(e.code, pac)
    n_words = 2 ** e.code.n_total
    s_index = np.arange(n_words, dtype=np.int64)
    weights = np.full(n_words, 1.0 / n_words)
    return _chain(e.code, pac, s_index, e.observation_map, weights, e.observation_map)


def baseline_chain(
    s_len: int,
    code: Optional[LinearCode] = None,
    pac: Optional[ToeplitzHash] = None,
) -> GuessingChain:
    """
    Guessing chain when the observation is independent of S.
    
    Args:
        s_len: Sifted length, equal to the code's n_total
        code: Error-correcting code, identity when omitted
        pac: Privacy amplification hash, identity when omitted
    
    Raises:
        DeskScaleLimitError: If s_len > 20
    """
    _check_sifted_size(s_len)
    code = code or make_code(f"identity{s_len}")
    if code.n_total != s_len:
        raise InvalidParameterError(f"code block length {code.n_total} differs from s_len={s_len}")
    _check_pac(code, pac)
    
    n_words = 2 ** s_len
    s_index = np.arange(n_words, dtype=np.int64)
    observations = np.zeros(n_words, dtype=np.int64)
    weights = np.full(n_words, 1.0 / n_words)
    return _chain(code, pac, s_index, observations, weights, _decoded_infos(code))


def observation_chain(
    code: LinearCode,
    channel: np.ndarray,
    pac: Optional[ToeplitzHash] = None,
    prior: Optional[np.ndarray] = None,
) -> GuessingChain:
    """
    Guessing chain for an arbitrary observation channel W[s, y] = p(y|s).
    
    Args:
        code: Error-correcting code acting on S
        channel: 2^n_total x |Y| row-stochastic matrix
        pac: Privacy amplification hash, identity when omitted
        prior: Distribution of S, uniform when omitted
    """
    _check_pac(code, pac)
    n_words = 2 ** code.n_total
    channel = np.asarray(channel, dtype=np.float64)
    if channel.ndim != 2 or channel.shape[0] != n_words:
        raise InvalidParameterError(f"channel needs {n_words} rows, one per sifted word")
    prior = np.full(n_words, 1.0 / n_words) if prior is None else Distribution(prior).probs
    
    s_grid, y_grid = np.meshgrid(np.arange(n_words), np.arange(channel.shape[1]), indexing="ij")
    weights = (prior[:, None] * channel).reshape(-1)
    return _chain(code, pac, s_grid.reshape(-1), y_grid.reshape(-1), weights, _decoded_infos(code))


def l_marginal_ensemble(e: BreachEnsemble) -> CondEnsemble:
    """Ensemble of L given the observation: a point mass on the observed region's word."""
    n_groups = 2 ** e.code.k_info
    sizes = e.group_sizes
    observed = np.flatnonzero(sizes)
    return CondEnsemble(
        y_marginal=Distribution(sizes[observed] / sizes.sum()),
        conditionals=tuple(Distribution.point_mass(n_groups, int(index)) for index in observed),
    )
