"""Exact probabilistic-generation and spread computations for small permutation groups."""

from .permcore import (
    CeilingExceeded,
    Permutation,
    PermGroup,
    VerificationError,
    coset_action,
    derived_subgroup,
    diagonal_product,
    group_order,
    membership,
    orbit,
    parse_permutation,
    random_element,
    stabilizer,
)
from .rng import RandomStream

__version__ = "0.1.0"
