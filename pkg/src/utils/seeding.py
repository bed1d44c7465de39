"""
Seeding Utilities
Index-based seed derivation so replicates are reproducible in any order
"""

import numpy as np

_MODEL_STREAM = 0
_DATA_STREAM = 1


def mix_seed(base_seed: int, index: int) -> int:
    """
    64-bit per-replicate seed: the first uint64 word generated by
    SeedSequence([base_seed, index]). Depends only on (base_seed, index).
    """
    state = np.random.SeedSequence([int(base_seed), int(index)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def model_seed_sequence(seed: int) -> np.random.SeedSequence:
    """Seed material for regressor initialisation"""
    return np.random.SeedSequence(int(seed), spawn_key=(_MODEL_STREAM,))


def data_rng(seed: int) -> np.random.Generator:
    """Generator for synthetic observation streams, independent of model seeding"""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(_DATA_STREAM,)))
