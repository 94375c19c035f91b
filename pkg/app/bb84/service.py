"""
Desk-scale BB84 under a collective-attack channel model.

A run sifts raw bits, flips the receiver's sifted bits through a memoryless
binary symmetric channel, estimates the QBER on sacrificed check bits,
reconciles block by block, hashes the corrected key with a fresh Toeplitz
hash and books every secret bit in a KeyLedger.
"""
import hashlib
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Union
import numpy as np
from pydantic import validate_call

from app.bb84.models import IdealCode, Reconciliation
from app.bb84.schemas import KeyLedger, ProtocolConfig, ProtocolReport, SweepGrid
from app.core.config import settings
from app.core.exceptions import DegenerateSiftError, UnsupportedAttackError
from app.core.types import BitCount
from app.entropy_rates.schemas import Qber
from app.entropy_rates.service import binary_entropy, key_length, net_key_feasible
from app.gf2_codes.models import LinearCode, ToeplitzHash
from app.gf2_codes.service import decode_blocks, make_code, toeplitz_apply

logger = logging.getLogger(__name__)

SYNDROME_MODE_WARNING = (
    "syndrome mode sends parity bits in the clear; the adversary's "
    "information about the corrected key is not charged to the ledger"
)


@validate_call
def ideal_code_oracle(q: Qber, s_len: BitCount) -> IdealCode:
    """
    Synthetic code at the Shannon limit for a binary symmetric channel.
    
    Args:
        q: Channel QBER the code is sized for
        s_len: Information bits it will protect
    
    Returns:
        IdealCode: Rate 1 - h(q), always-correcting decoder
    """
    code = IdealCode(qber=q, h_q=binary_entropy(q))
    logger.debug(f"Ideal code for q={q}: rate {code.rate:.6f}, {code.parity_bits(s_len)} parity bits over {s_len}")
    return code


def _fingerprint(key_bits: np.ndarray) -> str:
    digest = hashlib.sha256()
    digest.update(len(key_bits).to_bytes(8, "big"))
    digest.update(np.packbits(key_bits).tobytes())
    return digest.hexdigest()


def _mod2(product: np.ndarray) -> np.ndarray:
    return (product % 2).astype(np.uint8)


class ProtocolSimulator:
    """Runs the S -> L -> K pipeline for one configuration."""
    
    def __init__(self, config: ProtocolConfig):
        """Initialize the simulator with its own seeded generator."""
        if config.attack != "collective":
            raise UnsupportedAttackError(
                f"{config.attack} attacks have no quantified key rate; only collective attacks are simulated"
            )
        self.config = config
        self.rng = np.random.default_rng(config.rng_seed)
    
    def sift(self) -> tuple[np.ndarray, np.ndarray]:
        """Keep raw bits whose bases match, then pass the receiver's copy through the channel."""
        raw = self.rng.integers(0, 2, size=self.config.raw_len, dtype=np.uint8)
        bases = self.rng.integers(0, 2, size=(2, self.config.raw_len), dtype=np.uint8)
        sender = raw[bases[0] == bases[1]]
        flips = (self.rng.random(sender.size) < self.config.qber).astype(np.uint8)
        return sender, sender ^ flips
    
    def sample_check_bits(self, sender: np.ndarray, receiver: np.ndarray) -> tuple[float, np.ndarray, int]:
        """
        Reveal a random check_fraction of the sifted bits and measure the QBER.
        
        Returns:
            tuple: (measured QBER, positions kept for the key, number of check bits)
        """
        n_sifted = sender.size
        n_check = int(round(self.config.check_fraction * n_sifted))
        if n_check == 0 or n_check >= n_sifted:
            raise DegenerateSiftError(f"{n_sifted} sifted bits leave no room for both check and key bits")
        order = self.rng.permutation(n_sifted)
        check, keep = order[:n_check], np.sort(order[n_check:])
        measured = float(np.count_nonzero(sender[check] != receiver[check]) / n_check)
        return measured, keep, n_check
    
    def _blocks(self, bits: np.ndarray, block_len: int) -> tuple[np.ndarray, int]:
        n_blocks = bits.size // block_len
        if n_blocks == 0:
            raise DegenerateSiftError(f"{bits.size} key bits do not fill one block of {block_len}")
        used = n_blocks * block_len
        return bits[:used].reshape(n_blocks, block_len), bits.size - used
    
    def reconcile_padded(self, code: LinearCode, sender: np.ndarray, receiver: np.ndarray) -> Reconciliation:
        """
        The sender one-time pads the parity bits of each systematic codeword.
        
        The receiver decodes [own information bits | sender's parity bits].
        """
        sender_info, discarded = self._blocks(sender, code.k_info)
        receiver_info, _ = self._blocks(receiver, code.k_info)
        codewords = _mod2(sender_info.astype(np.int64) @ code.generator.astype(np.int64))
        received = np.hstack([receiver_info, codewords[:, code.k_info:]])
        decoded, _, _ = decode_blocks(code, received)
        return Reconciliation(
            l_sender=sender_info.reshape(-1),
            l_receiver=decoded.reshape(-1),
            bits_used=sender_info.size,
            discarded_bits=discarded,
            pad_bits=sender_info.shape[0] * code.n_parity,
        )
    
    def reconcile_syndrome(self, code: LinearCode, sender: np.ndarray, receiver: np.ndarray) -> Reconciliation:
        """
        The sender discloses the syndrome of each sifted block.
        
        The receiver flips the coset leader of the syndrome difference; both
        parties then take L as the decoded information bits of the sender's block.
        """
        sender_blocks, discarded = self._blocks(sender, code.n_total)
        receiver_blocks, _ = self._blocks(receiver, code.n_total)
        check_t = code.parity_check.T.astype(np.int64)
        difference = _mod2(sender_blocks.astype(np.int64) @ check_t) ^ _mod2(receiver_blocks.astype(np.int64) @ check_t)
        # H = [P^T | I], so [0 | difference] has syndrome equal to the difference
        target = np.hstack([np.zeros((difference.shape[0], code.k_info), dtype=np.uint8), difference])
        _, nearest, _ = decode_blocks(code, target)
        corrected = receiver_blocks ^ (target ^ nearest)
        sender_l, _, _ = decode_blocks(code, sender_blocks)
        receiver_l, _, _ = decode_blocks(code, corrected)
        return Reconciliation(
            l_sender=sender_l.reshape(-1),
            l_receiver=receiver_l.reshape(-1),
            bits_used=sender_blocks.size,
            discarded_bits=discarded,
            pad_bits=0,
        )
    
    def reconcile_ideal(self, code: IdealCode, sender: np.ndarray) -> Reconciliation:
        """The oracle decoder hands the receiver the sender's bits."""
        pad_bits = code.parity_bits(sender.size) if self.config.ecc_mode == "padded" else 0
        return Reconciliation(
            l_sender=sender,
            l_receiver=sender.copy(),
            bits_used=sender.size,
            discarded_bits=0,
            pad_bits=pad_bits,
        )
    
    def final_key_length(self, measured_qber: float, bits_used: int, corrected_bits: int) -> int:
        """floor(|S'| (1 - h(Q + mu)) / 7) capped at |L|; zero when the bound is vacuous."""
        if measured_qber + self.config.mu >= 0.5:
            logger.warning(f"Measured QBER {measured_qber:.6f} + mu leaves no min-entropy; no key generated")
            return 0
        return min(key_length(bits_used, measured_qber, self.config.mu), corrected_bits)
    
    def run(self) -> ProtocolReport:
        """
        Execute sifting, checking, reconciliation and privacy amplification.
        
        Raises:
            DegenerateSiftError: If fewer than one code block survives
        """
        config = self.config
        sender, receiver = self.sift()
        measured_qber, keep, n_check = self.sample_check_bits(sender, receiver)
        sender, receiver = sender[keep], receiver[keep]
        
        if config.code_spec.family == "ideal":
            code: Union[IdealCode, LinearCode] = ideal_code_oracle(config.qber, int(sender.size))
            reconciliation = self.reconcile_ideal(code, sender)
        else:
            code = make_code(config.code_spec)
            if config.ecc_mode == "padded":
                reconciliation = self.reconcile_padded(code, sender, receiver)
            else:
                reconciliation = self.reconcile_syndrome(code, sender, receiver)
        
        mode_warning = None
        if config.ecc_mode == "syndrome":
            mode_warning = SYNDROME_MODE_WARNING
            logger.warning(f"Run seed={config.rng_seed}: {SYNDROME_MODE_WARNING}")
        
        corrected_bits = reconciliation.l_sender.size
        n_key = self.final_key_length(measured_qber, reconciliation.bits_used, corrected_bits)
        pac = ToeplitzHash.random(corrected_bits, n_key, self.rng)
        key_bits = toeplitz_apply(pac, reconciliation.l_sender)
        
        ledger = KeyLedger(
            sifted_bits=int(keep.size + n_check),
            check_bits_revealed=n_check,
            check_bits_spent=0,
            discarded_bits=reconciliation.discarded_bits,
            corrected_bits=corrected_bits,
            pad_bits_spent=reconciliation.pad_bits,
            key_bits_generated=n_key,
            net_bits=n_key - reconciliation.pad_bits,
            residual_errors=reconciliation.residual_errors,
        )
        report = ProtocolReport(
            config=config,
            ledger=ledger,
            configured_qber=config.qber,
            measured_qber=measured_qber,
            correction_ok=reconciliation.residual_errors == 0,
            code_rate=code.rate,
            feasibility_prediction=net_key_feasible(config.qber, code.rate),
            mode_warning=mode_warning,
            key_fingerprint=_fingerprint(key_bits),
        )
        
        if not report.correction_ok:
            logger.warning(f"Run seed={config.rng_seed}: {ledger.residual_errors} residual errors after correction")
        logger.info(
            f"Run {config.code_spec}/{config.ecc_mode} q={config.qber} seed={config.rng_seed}: "
            f"measured={measured_qber:.6f} key={n_key} pad={reconciliation.pad_bits} net={ledger.net_bits}"
        )
        return report


def run_protocol(config: ProtocolConfig) -> ProtocolReport:
    """
    Run one deterministic BB84 simulation.
    
    Args:
        config: Run configuration including the seed
    
    Returns:
        ProtocolReport: Ledger, QBER estimate and feasibility prediction
    
    Raises:
        UnsupportedAttackError: If a joint attack is requested
        DegenerateSiftError: If fewer than one code block survives
    """
    return ProtocolSimulator(config).run()


def derive_seed(base_seed: int, index: int) -> int:
    """Independent per-run seed from (base seed, grid index)."""
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1)[0])


def grid_configs(grid: SweepGrid) -> list[ProtocolConfig]:
    """Grid points in qber-major, then code, then mode order."""
    return [
        ProtocolConfig(
            raw_len=grid.raw_len,
            qber=qber,
            check_fraction=grid.check_fraction,
            code_spec=code,
            ecc_mode=mode,
            mu=grid.mu,
            rng_seed=derive_seed(grid.base_seed, index),
        )
        for index, (qber, code, mode) in enumerate(itertools.product(grid.qbers, grid.codes, grid.modes))
    ]


def sweep(grid: SweepGrid, workers: Optional[int] = None) -> list[ProtocolReport]:
    """
    Run every grid point; reports come back in grid order.
    
    Args:
        grid: QBER, code and mode values plus the base seed
        workers: Thread pool size, settings.sweep_workers when omitted
    """
    configs = grid_configs(grid)
    workers = workers or settings.sweep_workers
    logger.info(f"Sweeping {len(configs)} runs with {workers} worker(s)")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_protocol, configs))
