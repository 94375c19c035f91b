"""
Breach ensemble: S uniform over all words, observation = decoding region of S.
"""
from dataclasses import dataclass
import numpy as np

from app.core.exceptions import InvalidParameterError
from app.gf2_codes.models import LinearCode


@dataclass(frozen=True, eq=False)
class BreachEnsemble:
    """
    Partition of {0,1}^n_total into 2^k_info decoding regions.
    
    S is uniform over all words; the adversary observes the region index of S,
    which equals the information word the decoder returns for S.
    """
    
    code: LinearCode
    observation_map: np.ndarray
    
    def __post_init__(self):
        observation_map = np.asarray(self.observation_map, dtype=np.int64)
        if observation_map.shape != (2 ** self.code.n_total,):
            raise InvalidParameterError("observation map must cover every word of the sifted space")
        if observation_map.min() < 0 or observation_map.max() >= 2 ** self.code.k_info:
            raise InvalidParameterError("observation map must point into the decoding regions")
        observation_map.setflags(write=False)
        object.__setattr__(self, "observation_map", observation_map)
    
    @property
    def group_sizes(self) -> np.ndarray:
        return np.bincount(self.observation_map, minlength=2 ** self.code.k_info)
    
    def group(self, index: int) -> list[int]:
        """Members of one decoding region as word integers."""
        return np.flatnonzero(self.observation_map == index).tolist()
    
    def __repr__(self) -> str:
        return f"<BreachEnsemble(code='{self.code.label}', groups={2 ** self.code.k_info})>"
