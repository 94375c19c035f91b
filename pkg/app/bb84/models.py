"""
Synthetic Shannon-limit code and per-run reconciliation results.
"""
from dataclasses import dataclass
import math
import numpy as np

# Absorbs floating point noise before rounding parity counts up.
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class IdealCode:
    """
    Non-constructive stand-in for a capacity-achieving code.
    
    It has rate 1 - h(q) and its decoder is an oracle that always corrects.
    Only the simulator uses it; it never produces codewords.
    """
    
    qber: float
    h_q: float
    label: str = "ideal"
    
    @property
    def rate(self) -> float:
        return 1.0 - self.h_q
    
    def parity_bits(self, s_len: int) -> int:
        """Whole parity bits for s_len information bits: ceil(s_len * h / (1 - h))."""
        if self.h_q == 0.0:
            return 0
        return math.ceil(s_len * self.h_q / (1.0 - self.h_q) - _CEIL_SLACK)
    
    def __str__(self) -> str:
        return f"ideal code (synthetic, rate {self.rate:.6f})"


@dataclass(frozen=True, eq=False)
class Reconciliation:
    """Corrected keys of both parties after error correction."""
    
    l_sender: np.ndarray
    l_receiver: np.ndarray
    bits_used: int
    discarded_bits: int
    pad_bits: int
    
    @property
    def residual_errors(self) -> int:
        return int(np.count_nonzero(self.l_sender != self.l_receiver))
