"""Lifted interleaved linearized Reed-Solomon codes for multishot network coding."""

from .field import ExtensionField, FieldError, get_field
from .skew import (
    EvalPoint,
    SkewPolynomial,
    are_conjugate,
    conjugacy_representatives,
    gen_op_eval,
    lagrange_interpolate,
    moore_matrix,
    op_power,
    skew_mul,
    sum_rank_weight,
)
from .subspace import (
    Subspace,
    SubspaceTuple,
    gaussian_binomial,
    kappa,
    sum_subspace_distance,
)
from .channel import (
    ChannelParams,
    ChannelRealization,
    draw_dimension_partition,
    is_reachable,
    num_subspace_tuples,
    reach_pair,
    transmit,
)
from .code import CodeSpec, MessageVector, code_metrics, complement, encode, encode_basis
from .decoders import (
    DecodeOutcome,
    FailureReason,
    InterpolationBasis,
    ReceivedWord,
    build_interpolation_matrix,
    build_lo_matrix,
    complementary_decode,
    heuristic_failure_bound,
    list_decode,
    lo_decode,
    root_find,
    solve_interpolation,
    strict_failure_bound,
    unique_decode,
)

__version__ = "0.1.0"
