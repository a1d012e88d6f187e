"""Lifts of tropical matrices to the Puiseux field and their certificates."""

from .mirror import MirrorMatch, lift_casospecchio, lift_mirrored_block, match_mirror
from .certificate import KapranovCertificate, lift_from_barvinok, lift_full, lift_rank1, map_back, verify_lift
from .develop import (DevelopPlan, LeadingConstraint, ResidueData, develop_line, in_tropical_rowspace,
                      plan_generator, residue_space, solve_coefficients)
from .generic import DEFAULT_RETRIES, Generic
from .hyperplane import HyperplaneWitness, find_hyperplane, lift_hyperplane_base
from .pipeline import KapranovBounds, PipelineConfig, kapranov_bounds, kapranov_rank3_5col

__all__ = [
    "DEFAULT_RETRIES", "DevelopPlan", "Generic", "HyperplaneWitness", "KapranovBounds", "KapranovCertificate",
    "LeadingConstraint", "MirrorMatch", "PipelineConfig", "ResidueData", "develop_line", "find_hyperplane",
    "in_tropical_rowspace", "kapranov_bounds", "kapranov_rank3_5col", "lift_casospecchio", "lift_mirrored_block",
    "lift_from_barvinok",
    "lift_full", "lift_hyperplane_base", "lift_rank1", "map_back", "match_mirror", "plan_generator",
    "residue_space", "solve_coefficients", "verify_lift",
]
