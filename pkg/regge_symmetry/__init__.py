"""Regge symmetry of tetrahedra in Euclidean, spherical and hyperbolic space."""
from .errors import ReggeError
from .regge_transform import regge_edges, verify_regge
from .tetrahedron import EdgeLengths, dihedral_angles, validate
from .trig_kernel import Geometry
from .volume import volume

__all__ = [
    'EdgeLengths',
    'Geometry',
    'ReggeError',
    'dihedral_angles',
    'regge_edges',
    'validate',
    'verify_regge',
    'volume',
]
