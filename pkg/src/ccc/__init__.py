"""Characteristic classes of projective schemes over a prime field.

Given a homogeneous ideal cutting out X in P^n, this package computes the
pushforward degrees of the Segre class of X, the Chern(-Fulton) class, the
Chern-Schwartz-MacPherson class, and the topological Euler characteristic,
by saturating away X from random hypersurface intersections through it.
"""

from .classes import (ChowClass, ClassReport, RandomPolicy, chern_class,
                      csm_class, csm_hypersurface, euler_characteristic,
                      euler_complement, residual_degree, segre_class,
                      segre_from_residuals)
from .errors import (CccError, GenericityError, InvariantError, ParseError,
                     RingMismatchError, ValidationError)
from .groebner import (GroebnerBasis, buchberger_reduced_gb, division,
                       ideal_equality, ideal_membership, normal_form,
                       s_polynomial)
from .ideals import (HilbertData, Ideal, hilbert_numerator, intersection,
                     is_projectively_empty, jacobian_ideal, proj_dim_and_degree,
                     quotient_by_ideal, quotient_by_poly, random_ideal_element,
                     saturation_by_ideal, saturation_by_poly)
from .polynomials import (DEFAULT_PRIME, DegRevLex, ElimFirstVar, MonomialOrder,
                          Polynomial, PolynomialRing, PrimeField, is_prime)

__version__ = "0.1.0"

__all__ = [
    "CccError", "ChowClass", "ClassReport", "DEFAULT_PRIME", "DegRevLex",
    "ElimFirstVar", "GenericityError", "GroebnerBasis", "HilbertData", "Ideal",
    "InvariantError", "MonomialOrder", "ParseError", "Polynomial",
    "PolynomialRing", "PrimeField", "RandomPolicy", "RingMismatchError",
    "ValidationError", "buchberger_reduced_gb", "chern_class", "csm_class",
    "csm_hypersurface", "division", "euler_characteristic", "euler_complement",
    "hilbert_numerator", "ideal_equality", "ideal_membership", "intersection",
    "is_prime", "is_projectively_empty", "jacobian_ideal", "normal_form",
    "proj_dim_and_degree", "quotient_by_ideal", "quotient_by_poly",
    "random_ideal_element", "residual_degree", "s_polynomial", "saturation_by_ideal",
    "saturation_by_poly", "segre_class", "segre_from_residuals",
]
