"""
Complexes Module
Finite abstract simplicial complexes, simplicial maps and the constructions built on them
"""

from .simplicial_complex import (
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    build_complex,
    constant_map,
    euler_characteristic,
    full_subcomplex,
    identity_map,
)
from .subdivision import (
    SubdivisionCarrier,
    barycentric_subdivision,
    iterated_subdivision,
    subdivide_map,
)
from .constructions import (
    circle,
    is_automorphism,
    mapping_torus,
    point,
    polygon,
    product,
    reflection,
    simplex,
    sphere,
    wedge,
)

__all__ = [
    'Simplex',
    'SimplicialComplex',
    'SimplicialMap',
    'SubdivisionCarrier',
    'barycentric_subdivision',
    'build_complex',
    'circle',
    'constant_map',
    'euler_characteristic',
    'full_subcomplex',
    'identity_map',
    'is_automorphism',
    'iterated_subdivision',
    'mapping_torus',
    'point',
    'polygon',
    'product',
    'reflection',
    'simplex',
    'sphere',
    'subdivide_map',
    'wedge',
]
