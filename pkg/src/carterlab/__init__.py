"""Carter subgroups of finite groups: permutation and matrix groups, root systems,
Chevalley groups, existence criteria and a catalog of almost simple cases."""

from .carter import carter_auto, carter_brute, carter_solvable, carter_syl2, esyl2, is_carter, satisfies_E
from .errors import CarterError
from .matgrp import classical_group, matrix_group, semilinear_extend
from .perm import PermGroup, alternating_group, symmetric_group

__version__ = "0.1.0"

__all__ = ["CarterError", "PermGroup", "alternating_group", "carter_auto", "carter_brute",
           "carter_solvable", "carter_syl2", "classical_group", "esyl2", "is_carter",
           "matrix_group", "satisfies_E", "semilinear_extend", "symmetric_group"]
