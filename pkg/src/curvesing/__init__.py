"""Exact local invariants of plane curve singularities.

The main entry point is :func:`full_record`, which computes the Milnor and
Tjurina numbers, multiplicity, branch count, delta invariant, the ratio
``rho = mu/tau`` and the codimension of holomorphic forms in all forms on
the normalization, and checks the identities that relate them.
"""

from .errors import CurvesingError, InputError, InternalInvariantError, NonIsolatedError
from .invariants import InvariantRecord, full_record, milnor, record_to_json, tjurina, tjurina_prime
from .polyring import Polynomial, VariableSet, parse_polynomial

__all__ = [
    "CurvesingError",
    "InputError",
    "InternalInvariantError",
    "NonIsolatedError",
    "InvariantRecord",
    "Polynomial",
    "VariableSet",
    "full_record",
    "milnor",
    "parse_polynomial",
    "record_to_json",
    "tjurina",
    "tjurina_prime",
]

__version__ = "0.1.0"
