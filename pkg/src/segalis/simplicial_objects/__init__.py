"""Truncated simplicial objects and their generators."""
from .core import (SimplicialObject, codegeneracy, coface, constant, epi_mono, join_final, join_initial,
                   path_space)
from .dold_kan import (ChainComplex, chain_complex, complexes_isomorphic, dold_kan_inverse, normalized_chains,
                       random_chain_complex, surjection_count, surjections)
from .generators import (FiniteCategory, PartialMonoid, cyclic_group, disjoint_union_monoid, monoid_category,
                         nerve_of_category, partial_monoid_object, pmonoid_arrays, poset_category, total_monoid)
from .io import dumps, from_json, loads, to_json
from .s_construction import iso_classes, s_construction

__all__ = [
    "ChainComplex", "FiniteCategory", "PartialMonoid", "SimplicialObject", "chain_complex", "codegeneracy",
    "coface", "complexes_isomorphic", "constant", "cyclic_group", "disjoint_union_monoid", "dold_kan_inverse",
    "dumps", "epi_mono", "from_json", "iso_classes", "join_final", "join_initial", "loads", "monoid_category",
    "nerve_of_category", "normalized_chains", "partial_monoid_object", "path_space", "pmonoid_arrays",
    "poset_category", "random_chain_complex", "s_construction", "surjection_count", "surjections", "to_json",
    "total_monoid",
]
