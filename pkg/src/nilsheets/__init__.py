"""Nilpotent orbits, Levi subalgebras, rigid orbits and sheets of semisimple
Lie algebras, computed exactly over the rationals."""

from .rootsystem import RootSystem, SimpleType, build_root_system, parse_type
from .chevalley import AlgebraElement, ChevalleyAlgebra, build_algebra

__version__ = "0.1.0"

__all__ = [
    "RootSystem",
    "SimpleType",
    "build_root_system",
    "parse_type",
    "AlgebraElement",
    "ChevalleyAlgebra",
    "build_algebra",
]
