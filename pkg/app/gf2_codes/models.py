"""
Linear codes and Toeplitz hashes as immutable GF(2) values.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence
import numpy as np
from scipy.linalg import toeplitz

from app.core.exceptions import InvalidParameterError

# Exhaustive codebooks are built only up to this many information bits.
MAX_CODEBOOK_INFO_BITS = 20


def to_bits(values, allow_empty: bool = False) -> np.ndarray:
    """
    Convert a bit string or sequence to a read-only uint8 vector.
    
    Args:
        values: "1011", [1, 0, 1, 1] or an array of zeros and ones
        allow_empty: Accept zero-length input
        
    Returns:
        np.ndarray: 1-d uint8 array
    """
    if isinstance(values, str):
        values = [int(char) for char in values]
    bits = np.array(values, dtype=np.int64).reshape(-1)
    if np.any((bits != 0) & (bits != 1)):
        raise InvalidParameterError("bit words may contain only 0 and 1")
    if bits.size == 0 and not allow_empty:
        raise InvalidParameterError("bit words must be non-empty")
    bits = bits.astype(np.uint8)
    bits.setflags(write=False)
    return bits


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join(str(int(bit)) for bit in bits)


def enumerate_words(length: int) -> np.ndarray:
    """All 2^length words as rows, in lexicographic order."""
    indices = np.arange(2 ** length, dtype=np.int64)
    shifts = np.arange(length - 1, -1, -1, dtype=np.int64)
    return ((indices[:, None] >> shifts) & 1).astype(np.uint8)


def gf2_row_reduce(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """
    Reduced row echelon form over GF(2).
    
    Returns:
        tuple: The reduced matrix and the list of pivot columns
    """
    reduced = np.array(matrix, dtype=np.uint8) % 2
    n_rows, n_cols = reduced.shape
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        candidates = np.nonzero(reduced[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot = row + int(candidates[0])
        if pivot != row:
            reduced[[row, pivot]] = reduced[[pivot, row]]
        others = np.nonzero(reduced[:, col])[0]
        others = others[others != row]
        reduced[others] ^= reduced[row]
        pivots.append(col)
        row += 1
    return reduced, pivots


def gf2_rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    return len(gf2_row_reduce(matrix)[1])


def _frozen_matrix(values, n_cols: int) -> np.ndarray:
    matrix = np.array(values, dtype=np.uint8).reshape(-1, n_cols) % 2
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class LinearCode:
    """
    Binary (n_total, k_info) linear code with generator and parity-check matrices.
    
    Codewords are info @ generator over GF(2). For systematic codes the first
    k_info coordinates carry the information bits and column_order records
    which column of the source generator each coordinate came from.
    """
    
    n_total: int
    k_info: int
    generator: np.ndarray
    parity_check: np.ndarray
    systematic: bool = True
    column_order: tuple[int, ...] = ()
    label: str = "linear"
    
    def __post_init__(self):
        if not 0 < self.k_info <= self.n_total:
            raise InvalidParameterError(f"need 0 < k_info <= n_total, got ({self.n_total}, {self.k_info})")
        generator = _frozen_matrix(self.generator, self.n_total)
        parity_check = _frozen_matrix(self.parity_check, self.n_total)
        if generator.shape != (self.k_info, self.n_total):
            raise InvalidParameterError(f"generator shape {generator.shape} does not match the code")
        if parity_check.shape != (self.n_total - self.k_info, self.n_total):
            raise InvalidParameterError(f"parity-check shape {parity_check.shape} does not match the code")
        if np.any((generator.astype(np.int64) @ parity_check.T.astype(np.int64)) % 2):
            raise InvalidParameterError("generator and parity-check matrices are not orthogonal")
        if gf2_rank(generator) != self.k_info:
            raise InvalidParameterError("generator is rank deficient")
        
        object.__setattr__(self, "generator", generator)
        object.__setattr__(self, "parity_check", parity_check)
        object.__setattr__(self, "column_order", tuple(self.column_order) or tuple(range(self.n_total)))
    
    @property
    def rate(self) -> float:
        return self.k_info / self.n_total
    
    @property
    def n_parity(self) -> int:
        return self.n_total - self.k_info
    
    @cached_property
    def codebook(self) -> np.ndarray:
        """All 2^k_info codewords, row i encoding info word i (most significant bit first)."""
        if self.k_info > MAX_CODEBOOK_INFO_BITS:
            raise InvalidParameterError(f"codebook of 2^{self.k_info} words is beyond desk scale")
        infos = enumerate_words(self.k_info).astype(np.int64)
        return ((infos @ self.generator.astype(np.int64)) % 2).astype(np.uint8)
    
    @cached_property
    def lexicographic_order(self) -> np.ndarray:
        """Permutation sorting the codebook rows lexicographically."""
        return np.lexsort(self.codebook.T[::-1])
    
    @cached_property
    def minimum_distance(self) -> int:
        weights = self.codebook.sum(axis=1)
        return int(weights[weights > 0].min())
    
    def __repr__(self) -> str:
        return f"<LinearCode(label='{self.label}', n_total={self.n_total}, k_info={self.k_info}, rate={self.rate:.6f})>"
    
    def __str__(self) -> str:
        return f"({self.n_total}, {self.k_info}) {self.label} code"


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Nearest codeword, its information bits and the number of flipped bits."""
    
    info: np.ndarray
    corrected: np.ndarray
    error_weight: int


@dataclass(frozen=True, eq=False)
class ToeplitzHash:
    """
    Toeplitz matrix T[j, i] = seed[j - i + n_in - 1] mapping n_in bits to n_out bits.
    """
    
    n_in: int
    n_out: int
    seed: np.ndarray = field(repr=False)
    
    def __post_init__(self):
        if self.n_in < 1 or not 0 <= self.n_out <= self.n_in:
            raise InvalidParameterError(f"need 0 <= n_out <= n_in and n_in >= 1, got ({self.n_in}, {self.n_out})")
        seed = to_bits(self.seed, allow_empty=True)
        expected = self.n_in + self.n_out - 1
        if seed.size != expected:
            raise InvalidParameterError(f"seed has {seed.size} bits, expected {expected}")
        object.__setattr__(self, "seed", seed)
    
    @classmethod
    def random(cls, n_in: int, n_out: int, rng: np.random.Generator) -> "ToeplitzHash":
        return cls(n_in=n_in, n_out=n_out, seed=rng.integers(0, 2, size=n_in + n_out - 1))
    
    @cached_property
    def matrix(self) -> np.ndarray:
        """The n_out x n_in Toeplitz matrix."""
        if self.n_out == 0:
            return np.zeros((0, self.n_in), dtype=np.uint8)
        first_column = self.seed[self.n_in - 1:]
        first_row = self.seed[self.n_in - 1::-1]
        return toeplitz(first_column, first_row).astype(np.uint8)
    
    def __repr__(self) -> str:
        return f"<ToeplitzHash(n_in={self.n_in}, n_out={self.n_out})>"
