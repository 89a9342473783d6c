"""Bounded complexes, homology, depth of complexes and derived tensor products."""
from .core import (ChainMap, ComplexError, FreeComplex, ModuleComplex, cone, direct_sum_complexes,
                   identity_map, koszul_complex, module_as_complex, reshape, shift, tensor_complexes,
                   truncate_co_ge, truncate_ge, truncation_injection, truncation_surjection, twist_complex)
from .depth import (ExactComplexError, InconclusiveDepthError, MCMReport, depth_complex, homology_inf,
                    homology_sup, is_mcm_complex, koszul_depth_complex)
from .derived import (DerivedTensorResult, EisenbudLift, SESResult, derived_tensor, les_exactness,
                      lift_resolution_eisenbud, ses_derived_tensor)


def homology(C: ModuleComplex, i: int):
    return C.homology(i)


__all__ = [name for name in dir() if not name.startswith("_")]
