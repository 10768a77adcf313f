"""Iterated wreath products, their sign overgroups, and the arithmetic
dynamics that lands inside them."""

from .automorphism import (TreeAutomorphism, act_on_leaf, compose, decompose, from_leaf_permutation,
                           identity, invert, random_automorphism, restrict, to_leaf_permutation)
from .errors import ArborealError
from .overgroups import OvergroupSpec, enumerate_members, is_member, order, random_member
from .signs import sgn, sgn1_mm, sgn2_mm, sgn_m, sgn_upper
from .tree_index import TreeShape

__version__ = "0.1.0"

__all__ = [
    "ArborealError", "OvergroupSpec", "TreeAutomorphism", "TreeShape", "act_on_leaf", "compose",
    "decompose", "enumerate_members", "from_leaf_permutation", "identity", "invert", "is_member",
    "order", "random_automorphism", "random_member", "restrict", "sgn", "sgn1_mm", "sgn2_mm",
    "sgn_m", "sgn_upper", "to_leaf_permutation",
]
