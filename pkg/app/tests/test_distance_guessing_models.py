"""
Unit tests for distribution and ensemble value objects.
"""
import numpy as np
import pytest

from app.core.exceptions import InvalidParameterError
from app.distance_guessing.models import CondEnsemble, Distribution


class TestDistribution:
    """Test cases for the Distribution value object."""
    
    def test_uniform(self):
        """Test the uniform constructor."""
        p = Distribution.uniform(4)
        
        assert p.n_outcomes == 4
        assert np.allclose(p.probs, 0.25)
    
    def test_point_mass(self):
        """Test the point mass constructor."""
        p = Distribution.point_mass(3, 1)
        
        assert p.probs.tolist() == [0.0, 1.0, 0.0]
    
    def test_probabilities_are_read_only(self):
        """Test that the probability vector cannot be modified in place."""
        p = Distribution([0.5, 0.5])
        
        with pytest.raises(ValueError):
            p.probs[0] = 1.0
    
    def test_negative_probability_rejected(self):
        """Test that negative entries are rejected."""
        with pytest.raises(InvalidParameterError):
            Distribution([1.5, -0.5])
    
    def test_unnormalized_rejected(self):
        """Test that vectors not summing to one are rejected."""
        with pytest.raises(InvalidParameterError):
            Distribution([0.5, 0.4])
    
    def test_empty_rejected(self):
        """Test that an empty vector is rejected."""
        with pytest.raises(InvalidParameterError):
            Distribution([])
    
    def test_equality(self):
        """Test value equality."""
        assert Distribution([0.5, 0.5]) == Distribution.uniform(2)
        assert Distribution([0.75, 0.25]) != Distribution.uniform(2)
    
    def test_repr(self):
        """Test the string representation."""
        assert repr(Distribution([1.0])) == "<Distribution(n_outcomes=1, probs=[1.0])>"


class TestCondEnsemble:
    """Test cases for the CondEnsemble value object."""
    
    def test_from_matrix(self):
        """Test building an ensemble from a marginal and a conditional matrix."""
        ensemble = CondEnsemble.from_matrix([0.25, 0.75], np.array([[1.0, 0.0, 0.0], [0.2, 0.3, 0.5]]))
        
        assert ensemble.n_observations == 2
        assert ensemble.n_keys == 3
        assert ensemble.matrix.shape == (2, 3)
    
    def test_single(self):
        """Test the single-observation ensemble."""
        ensemble = CondEnsemble.single(Distribution.uniform(4))
        
        assert ensemble.n_observations == 1
        assert ensemble.y_marginal.probs.tolist() == [1.0]
    
    def test_conditional_count_must_match_marginal(self):
        """Test that one conditional per observation is required."""
        with pytest.raises(InvalidParameterError):
            CondEnsemble(y_marginal=Distribution([0.5, 0.5]), conditionals=(Distribution.uniform(2),))
    
    def test_conditionals_share_key_set(self):
        """Test that conditionals over different key sets are rejected."""
        with pytest.raises(InvalidParameterError):
            CondEnsemble(
                y_marginal=Distribution([0.5, 0.5]),
                conditionals=(Distribution.uniform(2), Distribution.uniform(3)),
            )
