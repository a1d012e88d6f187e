"""Tropical, Barvinok and Kapranov ranks over the min-plus semiring, with exact lift certificates."""

from .assignment import DetResult, count_optimal_permutations, is_singular, trop_det
from .errors import (ChainViolation, DimensionError, GuardError, LiftError, ParseError, PipelineFailure,
                     PreconditionError, TropError)
from .puiseux import LiftMatrix, PuiseuxScalar, matrix_rank, monomial
from .ranks import BarvinokWitness, TropicalRankWitness, barvinok_rank, check_chain, tropical_rank
from .semiring import (TropMatrix, normalize, outer_sum, trop_add, trop_matadd, trop_matmul, trop_mul,
                       zero_pattern)
from .lift import KapranovCertificate, kapranov_bounds, kapranov_rank3_5col, verify_lift

__version__ = "0.1.0"
