"""
Dirichlet characters and the character sums built on them.
"""

from digitgoldbach.characters.group import (
    DirichletCharacter,
    character_from_index,
    character_group,
    coefficient_c_chi,
    gauss_sum,
    primitive_characters,
)
from digitgoldbach.characters.sums import (
    count_square_roots,
    fraction_pair_count,
    fraction_pair_sweep,
    hensel_reduction_check,
    square_root_bound,
    square_root_sweep,
    w_sum,
    w_sum_bound,
    w_sum_sweep,
    weil_sum_check,
    weil_sweep,
)

__all__ = [
    "DirichletCharacter",
    "character_from_index",
    "character_group",
    "coefficient_c_chi",
    "count_square_roots",
    "fraction_pair_count",
    "fraction_pair_sweep",
    "gauss_sum",
    "hensel_reduction_check",
    "primitive_characters",
    "square_root_bound",
    "square_root_sweep",
    "w_sum",
    "w_sum_bound",
    "w_sum_sweep",
    "weil_sum_check",
    "weil_sweep",
]
