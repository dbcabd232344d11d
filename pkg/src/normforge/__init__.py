"""Equivariant suboperads of coinduced operads, checked exactly on small finite groups."""

__version__ = "0.1.0"

from .coinduced import (
    CoinducedElement,
    GraphSubgroup,
    act,
    compose,
    coset_graph_subgroup,
    element_supports_transfers,
    fixed_points_nonempty,
    in_R_tau,
    psi_gamma,
)
from .groups import FiniteGroup, Subgroup, direct_product, load_group, make_cyclic, preset_group
from .indexing import IndexGraph, TwistMap, graph_compose, graph_supports_transfers, in_I_tau, p_graph
from .monoids import DYADIC, EMBEDDING, FAT_DYADIC, TRIVIAL, disjoint_family, get_monoid
from .permutations import Permutation, perm_partial_composition
from .realization import admissible_sets, realized_transfer_system, reproduce_appendix_b, reproduce_warning
from .transfer import TransferSystem, enumerate_transfer_systems, generate_transfer_system

__all__ = [
    "CoinducedElement",
    "DYADIC",
    "EMBEDDING",
    "FAT_DYADIC",
    "FiniteGroup",
    "GraphSubgroup",
    "IndexGraph",
    "Permutation",
    "Subgroup",
    "TRIVIAL",
    "TransferSystem",
    "TwistMap",
    "act",
    "admissible_sets",
    "compose",
    "coset_graph_subgroup",
    "direct_product",
    "disjoint_family",
    "element_supports_transfers",
    "enumerate_transfer_systems",
    "fixed_points_nonempty",
    "generate_transfer_system",
    "get_monoid",
    "graph_compose",
    "graph_supports_transfers",
    "in_I_tau",
    "in_R_tau",
    "load_group",
    "make_cyclic",
    "p_graph",
    "perm_partial_composition",
    "preset_group",
    "psi_gamma",
    "realized_transfer_system",
    "reproduce_appendix_b",
    "reproduce_warning",
]
