"""Exact Clifford algebras, gamma-matrix representations and spinor tools."""

from .blade import (
    Multivector,
    NotInvertibleError,
    ParseError,
    Signature,
    format_multivector,
    parse_multivector,
)
from .classify import classify, even_subalgebra, verify_periodicity
from .lipschitz import group_membership, rotor_exp, rotor_from_axis_angle
from .matrep import charge_conjugation, gamma_matrices, ko_signs, majorana_class

__all__ = [
    "Multivector",
    "NotInvertibleError",
    "ParseError",
    "Signature",
    "charge_conjugation",
    "classify",
    "even_subalgebra",
    "format_multivector",
    "gamma_matrices",
    "group_membership",
    "ko_signs",
    "majorana_class",
    "parse_multivector",
    "rotor_exp",
    "rotor_from_axis_angle",
    "verify_periodicity",
]

__version__ = "0.1.0"
