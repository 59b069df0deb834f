"""Sperner's lemma three ways, and Brouwer fixed points from Sperner labelings."""

from .brouwer import (
    ApproxFixedPoint,
    FixedPointHit,
    MapOnSimplex,
    label_from_map,
    parse_map,
    ray_retraction,
    solve,
    star_labeling,
)
from .cochain import (
    Cochain,
    chain_identity_report,
    coboundary,
    cohomology_rank,
    connecting_witness,
    degree_mod2,
    pullback,
    verify_commutation,
)
from .complex import EmbeddedComplex, boundary_subcomplex, build_complex, cofacets, open_star, standard_complex
from .simplex import StandardSimplex, carrier_faces, face_opposite, simplex_diameter
from .sperner import (
    Labeling,
    SimplicialMap,
    SpernerCensus,
    census,
    find_fully_labeled_bruteforce,
    find_fully_labeled_pathfollow,
    to_simplicial_map,
    validate_sperner,
)
from .subdivision import ImplicitEdgewise, barycentric_subdivide, edgewise_subdivide, subdivision_sequence
from .verify import random_sperner_labeling, triple_check

__version__ = "0.1.0"

__all__ = [
    "ApproxFixedPoint",
    "Cochain",
    "EmbeddedComplex",
    "FixedPointHit",
    "ImplicitEdgewise",
    "Labeling",
    "MapOnSimplex",
    "SimplicialMap",
    "SpernerCensus",
    "StandardSimplex",
    "barycentric_subdivide",
    "boundary_subcomplex",
    "build_complex",
    "carrier_faces",
    "census",
    "chain_identity_report",
    "coboundary",
    "cofacets",
    "cohomology_rank",
    "connecting_witness",
    "degree_mod2",
    "edgewise_subdivide",
    "face_opposite",
    "find_fully_labeled_bruteforce",
    "find_fully_labeled_pathfollow",
    "label_from_map",
    "open_star",
    "parse_map",
    "pullback",
    "random_sperner_labeling",
    "ray_retraction",
    "simplex_diameter",
    "solve",
    "standard_complex",
    "star_labeling",
    "subdivision_sequence",
    "to_simplicial_map",
    "triple_check",
    "validate_sperner",
    "verify_commutation",
]
