"""Groebner bases for graded submodules of free modules over polynomial rings."""
from .poly import MonomialOrder, Poly, PolyRing
from .matrix import Matrix, block, block_diag, hstack, kron, vstack
from .engine import GBEngine
from .ops import (AugmentedBasis, GroebnerBasis, NotHomogeneousError, PolyVector, annihilator,
                  buchberger, colon, colon_and_ann, dim_of_monomial_quotient, hilbert_function,
                  hilbert_numerator, ideal_basis, intersect_ideals, is_zero_module, kernel_of_map,
                  krull_dim, minimal_generators, module_colon, normal_form, radical_membership,
                  syzygies, total_length)

Monomial = tuple  # (component, exponent tuple)

__all__ = [
    "AugmentedBasis", "GBEngine", "GroebnerBasis", "Matrix", "Monomial", "MonomialOrder",
    "NotHomogeneousError", "Poly", "PolyRing", "PolyVector", "annihilator", "block", "block_diag",
    "buchberger", "colon", "colon_and_ann", "dim_of_monomial_quotient", "hilbert_function",
    "hilbert_numerator", "hstack", "ideal_basis", "intersect_ideals", "is_zero_module",
    "kernel_of_map", "krull_dim", "kron", "minimal_generators", "module_colon", "normal_form",
    "radical_membership", "syzygies", "total_length", "vstack",
]
