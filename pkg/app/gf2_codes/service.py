"""
Construction, encoding and nearest-codeword decoding of binary linear codes,
plus Toeplitz hashing for privacy amplification.
"""
import itertools
import logging
from typing import Union
import numpy as np
from scipy.signal import convolve

from app.core.exceptions import DeskScaleLimitError, InvalidParameterError
from app.gf2_codes.models import (
    MAX_CODEBOOK_INFO_BITS,
    DecodeResult,
    LinearCode,
    ToeplitzHash,
    gf2_row_reduce,
    to_bits,
)
from app.gf2_codes.schemas import CodeSpec

logger = logging.getLogger(__name__)

# Syndrome-table decoding enumerates error patterns up to this block length.
MAX_SYNDROME_DECODE_LENGTH = 24
# Rows of the (blocks x codewords) distance table computed at once.
_DECODE_CHUNK_CELLS = 1 << 22

HAMMING74_PARITY = np.array([
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
    [1, 1, 1],
], dtype=np.uint8)

# Textbook (non-systematic) Hamming(7,4) generator.
HAMMING74_TEXTBOOK = np.array([
    [1, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 1, 0, 1, 0],
    [1, 1, 0, 1, 0, 0, 1],
], dtype=np.uint8)


def _from_parity_block(parity: np.ndarray, label: str, column_order=()) -> LinearCode:
    """Build G = [I | P] and H = [P^T | I]."""
    k_info, n_parity = parity.shape
    generator = np.hstack([np.eye(k_info, dtype=np.uint8), parity])
    parity_check = np.hstack([parity.T, np.eye(n_parity, dtype=np.uint8)])
    return LinearCode(
        n_total=k_info + n_parity,
        k_info=k_info,
        generator=generator,
        parity_check=parity_check,
        systematic=True,
        column_order=column_order,
        label=label,
    )


def systematic_form(g, label: str = "linear") -> LinearCode:
    """
    Bring a full-rank generator to [I | P] by GF(2) elimination.
    
    Columns are permuted when the pivots are not the leading columns; the
    permutation is recorded in column_order.
    
    Raises:
        InvalidParameterError: If the generator is rank deficient
    """
    matrix = np.atleast_2d(np.array(g, dtype=np.uint8)) % 2
    reduced, pivots = gf2_row_reduce(matrix)
    k_info, n_total = matrix.shape
    if len(pivots) != k_info:
        raise InvalidParameterError(f"generator has rank {len(pivots)} < {k_info} rows")
    
    free = [col for col in range(n_total) if col not in pivots]
    order = tuple(pivots + free)
    parity = reduced[:k_info, list(free)] if free else np.zeros((k_info, 0), dtype=np.uint8)
    if order != tuple(range(n_total)):
        logger.debug(f"systematic form permuted columns to {order}")
    return _from_parity_block(parity, label=label, column_order=order)


def make_code(spec: Union[CodeSpec, str]) -> LinearCode:
    """
    Build a concrete systematic code.
    
    Args:
        spec: CodeSpec or its string form (hamming74, repetitionN, identityN, random:N:K:SEED)
        
    Returns:
        LinearCode: Code in systematic form
    """
    if isinstance(spec, str):
        spec = CodeSpec.parse(spec)
    
    if spec.family == "hamming74":
        return _from_parity_block(HAMMING74_PARITY, label="hamming74")
    if spec.family == "repetition":
        return systematic_form(np.ones((1, spec.n_total), dtype=np.uint8), label=str(spec))
    if spec.family == "identity":
        return systematic_form(np.eye(spec.n_total, dtype=np.uint8), label=str(spec))
    if spec.family == "random":
        rng = np.random.default_rng(spec.seed)
        parity = rng.integers(0, 2, size=(spec.k_info, spec.n_total - spec.k_info)).astype(np.uint8)
        return _from_parity_block(parity, label=str(spec))
    raise InvalidParameterError(f"'{spec}' is not a constructible code")


def encode(code: LinearCode, info) -> np.ndarray:
    """
    Codeword info @ G over GF(2); for systematic codes the tail is the parity bits.
    
    Raises:
        InvalidParameterError: If the info length is not k_info
    """
    info = to_bits(info)
    if info.size != code.k_info:
        raise InvalidParameterError(f"info has {info.size} bits, code expects {code.k_info}")
    return ((info.astype(np.int64) @ code.generator.astype(np.int64)) % 2).astype(np.uint8)


def syndrome(code: LinearCode, word) -> np.ndarray:
    """
    Syndrome word @ H^T over GF(2); all-zero exactly on codewords.
    
    Raises:
        InvalidParameterError: If the word length is not n_total
    """
    word = to_bits(word)
    if word.size != code.n_total:
        raise InvalidParameterError(f"word has {word.size} bits, code expects {code.n_total}")
    return ((word.astype(np.int64) @ code.parity_check.T.astype(np.int64)) % 2).astype(np.uint8)


def _check_desk_scale(code: LinearCode) -> None:
    if code.k_info > MAX_CODEBOOK_INFO_BITS and code.n_total > MAX_SYNDROME_DECODE_LENGTH:
        raise DeskScaleLimitError(
            f"{code} exceeds desk-scale decoding (n_total <= {MAX_SYNDROME_DECODE_LENGTH} or k_info <= {MAX_CODEBOOK_INFO_BITS})"
        )


def _decode_by_codebook(code: LinearCode, words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (codebook row index, distance) of the nearest codeword for every word."""
    ordered = code.codebook[code.lexicographic_order]
    chunk = max(1, _DECODE_CHUNK_CELLS // (ordered.shape[0] * code.n_total))
    rows = np.empty(words.shape[0], dtype=np.int64)
    distances = np.empty(words.shape[0], dtype=np.int64)
    for start in range(0, words.shape[0], chunk):
        block = words[start:start + chunk]
        table = (block[:, None, :] ^ ordered[None, :, :]).sum(axis=2, dtype=np.int64)
        # argmin keeps the first, i.e. lexicographically smallest, nearest codeword
        best = table.argmin(axis=1)
        rows[start:start + chunk] = code.lexicographic_order[best]
        distances[start:start + chunk] = table[np.arange(block.shape[0]), best]
    return rows, distances


def _decode_by_syndrome(code: LinearCode, word: np.ndarray) -> np.ndarray:
    """Lexicographically smallest nearest codeword via minimum-weight coset search."""
    target = syndrome(code, word)
    columns = code.parity_check.T.astype(np.int64)
    for weight in range(code.n_total + 1):
        candidates = []
        for positions in itertools.combinations(range(code.n_total), weight):
            if np.array_equal(columns[list(positions)].sum(axis=0) % 2, target):
                corrected = word.copy()
                corrected[list(positions)] ^= 1
                candidates.append(corrected)
        if candidates:
            return min(candidates, key=lambda candidate: candidate.tolist())
    raise DeskScaleLimitError("no coset leader found")


def decode_blocks(code: LinearCode, words: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Nearest-codeword decoding of many words at once.
    
    Args:
        code: Desk-scale linear code
        words: blocks x n_total array of received words
        
    Returns:
        tuple: (info bits, corrected codewords, error weights) per block
    """
    _check_desk_scale(code)
    words = np.atleast_2d(np.asarray(words, dtype=np.uint8))
    if words.shape[1] != code.n_total:
        raise InvalidParameterError(f"words have {words.shape[1]} bits, code expects {code.n_total}")
    
    if code.k_info <= MAX_CODEBOOK_INFO_BITS:
        rows, weights = _decode_by_codebook(code, words)
        corrected = code.codebook[rows]
        infos = ((rows[:, None] >> np.arange(code.k_info - 1, -1, -1)) & 1).astype(np.uint8)
        return infos, corrected, weights
    
    if not code.systematic:
        raise DeskScaleLimitError("syndrome-table decoding needs a systematic code")
    corrected = np.vstack([_decode_by_syndrome(code, word) for word in words])
    weights = (corrected ^ words).sum(axis=1, dtype=np.int64)
    return corrected[:, :code.k_info], corrected, weights


def decode_nearest(code: LinearCode, word) -> DecodeResult:
    """
    Minimum-Hamming-distance decoding, ties broken by the lexicographically smallest codeword.
    
    Raises:
        InvalidParameterError: If the word length is not n_total
        DeskScaleLimitError: If neither n_total <= 24 nor k_info <= 20
    """
    word = to_bits(word)
    if word.size != code.n_total:
        raise InvalidParameterError(f"word has {word.size} bits, code expects {code.n_total}")
    infos, corrected, weights = decode_blocks(code, word[None, :])
    return DecodeResult(info=infos[0], corrected=corrected[0], error_weight=int(weights[0]))


def toeplitz_apply(h: ToeplitzHash, bits) -> np.ndarray:
    """
    Output bit j = XOR_i seed[j - i + n_in - 1] * input[i].
    
    The product is the middle slice of the full convolution of seed and input.
    
    Raises:
        InvalidParameterError: If the input length is not n_in
    """
    bits = to_bits(bits)
    if bits.size != h.n_in:
        raise InvalidParameterError(f"input has {bits.size} bits, hash expects {h.n_in}")
    if h.n_out == 0:
        return np.zeros(0, dtype=np.uint8)
    full = convolve(h.seed.astype(np.int64), bits.astype(np.int64))
    return (full[h.n_in - 1:h.n_in - 1 + h.n_out] % 2).astype(np.uint8)
