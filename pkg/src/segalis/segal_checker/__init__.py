"""Deciding higher Segal conditions and the equivalences derived from them."""
from .reports import (DKReport, LevelVerdict, PathspaceReport, SegalReport, dk_equivalence_report,
                      essentially_constant_chain, is_d_segal, is_essentially_constant, is_lower_d_segal,
                      is_upper_d_segal, lambda_pullback_simplex, outer_horn, outer_horn_map, pathspace_report,
                      segal_complex, thinness)
from .independence import (IndependenceReport, atomic_excision_chain, check_excision_step,
                           check_triangulation_independence, excision_chain, flip_excisions, validate_excision)
from .cubes import (CubeInDelta, ExcisionReport, check_higher_excision, cube_diagram, cube_from_subsets,
                    enumerate_strongly_bicartesian_cubes, is_cartesian)

__all__ = [
    "CubeInDelta", "DKReport", "ExcisionReport", "IndependenceReport", "LevelVerdict", "PathspaceReport",
    "SegalReport", "atomic_excision_chain", "check_excision_step", "check_higher_excision",
    "check_triangulation_independence", "cube_diagram", "cube_from_subsets", "dk_equivalence_report",
    "enumerate_strongly_bicartesian_cubes", "essentially_constant_chain", "excision_chain", "flip_excisions",
    "is_cartesian", "is_d_segal", "is_essentially_constant", "is_lower_d_segal", "is_upper_d_segal",
    "lambda_pullback_simplex", "outer_horn", "outer_horn_map", "pathspace_report", "segal_complex", "thinness",
    "validate_excision",
]
