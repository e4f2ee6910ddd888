"""Hypergraph product codes under partially masked syndrome measurement.

Construction, small-set-flip decoding, multi-round Monte Carlo protocol,
and logical-error suppression fits.
"""

from .codes import (
    ClassicalCode,
    HgpCode,
    classical_distance,
    hgp_product,
    load_code,
    quantum_distance_bruteforce,
    sample_biregular_code,
    save_code,
)
from .fits import RoundsCurvePoint, SuppressionFit, fit_error_per_round, fit_lambda
from .gf2 import (
    BinaryMatrix,
    BitVector,
    RowSpace,
    load_matrix,
    nullspace_basis,
    rank,
    row_space_member,
    save_matrix,
    syndrome,
)
from .masking import (
    FIXED_FRACTION,
    IID_BERNOULLI,
    ITERATIVE,
    SIMPLE,
    Mask,
    Schedule,
    effective_mask,
    exists_isolated_qubit,
    load_mask,
    masked_distance,
    residual_degree_distribution,
    sample_mask,
    save_mask,
)
from .protocol import (
    LOGICAL_FAILURE,
    SUCCESS,
    CampaignRecord,
    ScheduleSpec,
    TrialOutcome,
    classify_outcome,
    run_campaign,
    run_trial,
)
from .ssf import DecodeResult, SmallSetTable, precompute_small_sets, ssf_decode, ssf_decode_flipped

__all__ = [name for name in dir() if not name.startswith("_")]
