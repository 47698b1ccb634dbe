"""PT-dressed spherical harmonics, dressed angular momentum and the PT-hydrogen atom."""

__version__ = "0.1.0"

from .gauges import GaugeFunction, parse_gauge
from .pt_core import (
    HarmonicCoefficients,
    Incompatible,
    PTCompatibility,
    check_compatibility,
    expand,
    pt_gram_matrix,
    pt_harmonic,
    pt_inner_product,
    pt_transform,
    reconstruct,
)
from .quadrature import default_sphere_grid, gauss_legendre, sphere_grid
from .special_functions import assoc_legendre, laguerre, legendre_p, spherical_harmonic

__all__ = [
    "GaugeFunction",
    "parse_gauge",
    "HarmonicCoefficients",
    "Incompatible",
    "PTCompatibility",
    "check_compatibility",
    "expand",
    "pt_gram_matrix",
    "pt_harmonic",
    "pt_inner_product",
    "pt_transform",
    "reconstruct",
    "default_sphere_grid",
    "gauss_legendre",
    "sphere_grid",
    "assoc_legendre",
    "laguerre",
    "legendre_p",
    "spherical_harmonic",
]
