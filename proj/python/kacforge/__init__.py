"""Finite bicrossed-product Kac algebras: construction, corepresentations, audits."""

from ._kacforge import (
    FiniteGroup,
    KacforgeError,
    MatchedPair,
    abelian_invariants,
    algebra_dim,
    audit,
    chebyshev_values,
    check_axioms,
    cyclic_group,
    derive_actions,
    group_name,
    invariant_groups,
    irrep_dims,
    is_isomorphic,
    load_group,
    load_pair,
    run,
    special_linear_group,
    symmetric_group,
)

__all__ = [
    "FiniteGroup",
    "KacforgeError",
    "MatchedPair",
    "abelian_invariants",
    "algebra_dim",
    "audit",
    "chebyshev_values",
    "check_axioms",
    "cyclic_group",
    "derive_actions",
    "group_name",
    "invariant_groups",
    "irrep_dims",
    "is_isomorphic",
    "load_group",
    "load_pair",
    "run",
    "special_linear_group",
    "symmetric_group",
]
