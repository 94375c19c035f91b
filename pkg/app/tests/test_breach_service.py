"""
Unit tests for the decoding-region breach and guessing chains.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from app.breach.schemas import GuessingChain
from app.breach.service import (
    baseline_chain,
    build_breach_ensemble,
    guessing_chain,
    l_marginal_ensemble,
    observation_chain,
)
from app.core.exceptions import DeskScaleLimitError, InvalidParameterError
from app.distance_guessing.service import ensemble_distance_to_uniform, ensemble_guessing_prob, theorem1_gap
from app.gf2_codes.models import ToeplitzHash
from app.gf2_codes.service import make_code


class TestBreachEnsemble:
    """Test cases for the partition into decoding regions."""
    
    def test_repetition3_groups(self):
        """Test the two majority regions of repetition(3)."""
        ensemble = build_breach_ensemble(make_code("repetition3"))
        
        assert ensemble.group_sizes.tolist() == [4, 4]
        assert ensemble.group(0) == [0b000, 0b001, 0b010, 0b100]
        assert ensemble.group(1) == [0b011, 0b101, 0b110, 0b111]
    
    def test_hamming74_groups(self):
        """Test that the perfect code splits 128 words into 16 groups of 8."""
        ensemble = build_breach_ensemble(make_code("hamming74"))
        
        assert ensemble.group_sizes.tolist() == [8] * 16
        assert ensemble.group_sizes.sum() == 128
    
    def test_trivial_code(self):
        """Test that a (1,1) code reveals S completely."""
        ensemble = build_breach_ensemble(make_code("repetition1"))
        
        assert ensemble.group_sizes.tolist() == [1, 1]
        assert guessing_chain(ensemble).p1_s == 1.0
    
    def test_size_guard(self):
        """Test that more than 20 sifted bits are refused."""
        with pytest.raises(DeskScaleLimitError):
            build_breach_ensemble(make_code("repetition21"))


class TestGuessingChain:
    """Test cases for the guessing chain p1(S) <= p1(L) <= p1(K)."""
    
    def test_repetition3_chain(self):
        """Test the (0.25, 1, 1) breach of repetition(3)."""
        chain = guessing_chain(build_breach_ensemble(make_code("repetition3")))
        
        assert (chain.p1_s, chain.p1_l, chain.p1_k) == (0.25, 1.0, 1.0)
        assert chain.breach_magnitude == 0.75
        assert chain.p1_s_codebook_scale == 0.5
    
    def test_hamming74_chain(self):
        """Test the (0.125, 1, 1) breach of hamming74."""
        chain = guessing_chain(build_breach_ensemble(make_code("hamming74")))
        
        assert (chain.p1_s, chain.p1_l, chain.p1_k) == (0.125, 1.0, 1.0)
        assert chain.breach_magnitude == 0.875
        assert chain.p1_s_codebook_scale == 0.0625
    
    def test_hash_to_zero_bits(self):
        """Test that a hash onto the empty word is guessed with certainty."""
        pac = ToeplitzHash(n_in=1, n_out=0, seed="")
        chain = guessing_chain(build_breach_ensemble(make_code("repetition3")), pac)
        
        assert chain.p1_k == 1.0
    
    def test_hash_dimension_mismatch(self):
        """Test that the hash must take k_info input bits."""
        pac = ToeplitzHash(n_in=2, n_out=1, seed="10")
        
        with pytest.raises(InvalidParameterError):
            guessing_chain(build_breach_ensemble(make_code("repetition3")), pac)
    
    def test_chain_order_enforced(self):
        """Test that a chain violating p1_s <= p1_l <= p1_k is rejected."""
        with pytest.raises(ValidationError):
            GuessingChain(code="x", p1_s=0.5, p1_l=0.25, p1_k=1.0, p1_s_codebook_scale=0.5, breach_magnitude=-0.25)


class TestBaselineChain:
    """Test cases for observations independent of S."""
    
    def test_repetition3_with_one_bit_hash(self):
        """Test (1/8, 1/2, 1/2) for repetition(3) and a one-bit hash."""
        pac = ToeplitzHash(n_in=1, n_out=1, seed="1")
        chain = baseline_chain(3, make_code("repetition3"), pac)
        
        assert (chain.p1_s, chain.p1_l, chain.p1_k) == (0.125, 0.5, 0.5)
    
    def test_identity_everything(self):
        """Test that identity code and hash keep 2^-4 throughout."""
        chain = baseline_chain(4)
        
        assert (chain.p1_s, chain.p1_l, chain.p1_k) == (0.0625, 0.0625, 0.0625)
    
    def test_hamming74(self):
        """Test (1/128, 1/16, 1/16) for hamming74."""
        chain = baseline_chain(7, make_code("hamming74"))
        
        assert chain.p1_s == pytest.approx(1 / 128, abs=1e-15)
        assert chain.p1_l == pytest.approx(1 / 16, abs=1e-15)
        assert chain.p1_k == pytest.approx(1 / 16, abs=1e-15)
    
    def test_length_mismatch(self):
        """Test that s_len must equal the block length."""
        with pytest.raises(InvalidParameterError):
            baseline_chain(5, make_code("hamming74"))
    
    def test_size_guard(self):
        """Test that more than 20 sifted bits are refused."""
        with pytest.raises(DeskScaleLimitError):
            baseline_chain(21)


class TestObservationChain:
    """Test cases for arbitrary observation channels."""
    
    def test_randomized_channels_keep_chain_order(self):
        """Test p1_s <= p1_l <= p1_k over 1000 random channels, codes and hashes."""
        rng = np.random.default_rng(2024)
        codes = [make_code("repetition3"), make_code("hamming74"), make_code("random:6:3:9")]
        
        for trial in range(1000):
            code = codes[trial % len(codes)]
            n_observations = int(rng.integers(1, 9))
            channel = rng.dirichlet(np.ones(n_observations), size=2 ** code.n_total)
            prior = rng.dirichlet(np.ones(2 ** code.n_total))
            prior = prior / prior.sum()
            n_out = int(rng.integers(0, code.k_info + 1))
            pac = ToeplitzHash.random(code.k_info, n_out, rng)
            
            chain = observation_chain(code, channel, pac, prior)
            
            assert chain.p1_s <= chain.p1_l + 1e-12
            assert chain.p1_l <= chain.p1_k + 1e-12
    
    def test_blind_channel_with_empty_hash_stays_a_probability(self):
        """Test that a certain key guess is reported as at most 1 whatever the float sum of the prior."""
        rng = np.random.default_rng(7)
        code = make_code("repetition3")
        pac = ToeplitzHash.random(code.k_info, 0, rng)
        channel = np.ones((2 ** code.n_total, 1))
        
        for _ in range(500):
            prior = rng.dirichlet(np.ones(2 ** code.n_total))
            prior = prior / prior.sum()
            
            chain = observation_chain(code, channel, pac, prior)
            
            assert chain.p1_k <= 1.0
            assert chain.p1_k == pytest.approx(1.0)
            assert chain.p1_s == pytest.approx(prior.max())
    
    def test_decoding_region_channel_reproduces_breach(self):
        """Test that observing the region index through a channel matrix matches the ensemble."""
        code = make_code("repetition3")
        ensemble = build_breach_ensemble(code)
        channel = np.eye(2)[ensemble.observation_map]
        
        chain = observation_chain(code, channel)
        
        assert (chain.p1_s, chain.p1_l, chain.p1_k) == (0.25, 1.0, 1.0)
    
    def test_channel_rows_checked(self):
        """Test that the channel needs one row per sifted word."""
        with pytest.raises(InvalidParameterError):
            observation_chain(make_code("repetition3"), np.ones((4, 2)) / 2)


class TestLMarginal:
    """Test cases for the ensemble of L given the observation."""
    
    @pytest.mark.parametrize("name", ["repetition3", "hamming74", "random:8:3:1"])
    def test_guessing_bound_consistency(self, name):
        """Test that L is certain given y, at distance 1 - 2^-k from uniform."""
        code = make_code(name)
        ensemble = l_marginal_ensemble(build_breach_ensemble(code))
        
        assert ensemble_guessing_prob(ensemble) == 1.0
        assert ensemble_distance_to_uniform(ensemble) == pytest.approx(1 - 2.0 ** -code.k_info, abs=1e-12)
        assert theorem1_gap(ensemble) >= -1e-12
