from .gri_reduction import ReductionPipeline, reduce_group_isomorphism
from .color_iso import solve_color_iso, gris_solve
from .bilinear_isometry import brute_force_isometries, isometries_via_gris

__all__ = [
    'ReductionPipeline',
    'reduce_group_isomorphism',
    'solve_color_iso',
    'gris_solve',
    'brute_force_isometries',
    'isometries_via_gris'
]
