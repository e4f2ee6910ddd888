"""Deterministic seed derivation for reproducible campaigns.

Every trial draws its randomness from numpy's SeedSequence keyed on
(base_seed, cell_index, trial_index), so any single trial can be replayed
in isolation and aggregation order never matters.
"""

from __future__ import annotations

import numpy as np


def trial_seeds(base_seed: int, cell_index: int, trial_index: int) -> tuple[int, int]:
    """(mask_seed, error_seed) for one trial of one campaign cell."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(cell_index, trial_index))
    state = ss.generate_state(2, dtype=np.uint64)
    return int(state[0]), int(state[1])
