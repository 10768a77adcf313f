"""Brute-force structure of small materialized groups."""

from .analysis import (NormalSeries, abelianization_invariants, chief_series,
                       chief_series_table, commutator_subgroup, factor_invariants,
                       find_generating_set, generates, is_cyclic, is_unique_minimal_normal,
                       materialize, minimal_normal_subgroups, normal_closure)
from .table import (DEFAULT_LIMIT, FiniteGroupTable, alternating_group, direct_product,
                    symmetric_group)
from .tuples import apply_move, normalize_tuple, replay
from .witnesses import (block_even_mask, commutator_witness, even_weight_mask,
                        find_inverting_conjugator, partial_inversion_witness,
                        sign_extension_group)

__all__ = [
    "DEFAULT_LIMIT", "FiniteGroupTable", "NormalSeries", "abelianization_invariants",
    "alternating_group", "apply_move", "block_even_mask", "chief_series",
    "chief_series_table", "commutator_subgroup", "commutator_witness", "direct_product",
    "even_weight_mask", "factor_invariants", "find_generating_set",
    "find_inverting_conjugator", "generates", "is_cyclic", "is_unique_minimal_normal",
    "materialize", "minimal_normal_subgroups", "normal_closure", "normalize_tuple",
    "partial_inversion_witness", "replay", "sign_extension_group", "symmetric_group",
]
