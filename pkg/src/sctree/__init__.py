"""Small cancellation on the Bass-Serre tree of Aut(k²) over finite fields."""
from .galois import BiPoly, Field, FieldError, get_field, parse_poly
from .automorphism import (
    PolyMap,
    ReducedWord,
    are_conjugate,
    compose,
    cyclic_reduce,
    invert,
    jvdk_factorize,
    normalize,
    parse_map,
    standard_maps,
    translation_length,
)
from .bassserre import Axis, Vertex, distance, geodesic
from .stabilizers import path_stabilizer, transporter, wpd_certify
from .smallcancel import CancellationParams, certify_tight, choose_exponent, max_relator, minimal_tight_B

__all__ = [
    "BiPoly",
    "Field",
    "FieldError",
    "get_field",
    "parse_poly",
    "PolyMap",
    "ReducedWord",
    "are_conjugate",
    "compose",
    "cyclic_reduce",
    "invert",
    "jvdk_factorize",
    "normalize",
    "parse_map",
    "standard_maps",
    "translation_length",
    "Axis",
    "Vertex",
    "distance",
    "geodesic",
    "path_stabilizer",
    "transporter",
    "wpd_certify",
    "CancellationParams",
    "certify_tight",
    "choose_exponent",
    "max_relator",
    "minimal_tight_B",
]
