from .ballpoly import (
    BallPoly,
    evaluate,
    graeffe_coeffs,
    graeffe_head,
    graeffe_step,
    poly_mul,
    product_of_linear,
    taylor_shift,
)
from .families import (
    FAMILIES,
    FamilyDomainError,
    bernoulli_numbers,
    make_family,
    nested_cluster_roots,
    parse_family,
    spiral_roots,
)
from .io import PolyParseError, format_poly, parse_poly_text, read_poly_file
from .oracle import CoeffOracle, ExactPoly, RootProductOracle, get_approximation

__all__ = [
    "BallPoly",
    "CoeffOracle",
    "ExactPoly",
    "RootProductOracle",
    "FAMILIES",
    "FamilyDomainError",
    "PolyParseError",
    "bernoulli_numbers",
    "evaluate",
    "format_poly",
    "get_approximation",
    "graeffe_coeffs",
    "graeffe_head",
    "graeffe_step",
    "make_family",
    "nested_cluster_roots",
    "parse_family",
    "parse_poly_text",
    "poly_mul",
    "product_of_linear",
    "read_poly_file",
    "spiral_roots",
    "taylor_shift",
]
