"""Depth of complexes through Koszul homology, and the MCM test for complexes."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ComplexError, ModuleComplex, koszul_complex, shift, tensor_complexes

INF = math.inf


class ExactComplexError(ComplexError):
    """Raised when a complex with no homology is asked for a normalization."""


class InconclusiveDepthError(ComplexError):
    """Raised when a truncated derived tensor is too short to determine depth."""


def homology_sup(C: ModuleComplex, upto: int | None = None) -> float:
    """sup{i : H_i(C) != 0} over degrees <= upto; -inf if exact there."""
    if not C.terms:
        return -INF
    hi = C.hi if upto is None else min(C.hi, upto)
    for i in range(hi, C.lo - 1, -1):
        if not C.homology_vanishes(i):
            return i
    return -INF


def homology_inf(C: ModuleComplex, upto: int | None = None) -> float:
    if not C.terms:
        return INF
    hi = C.hi if upto is None else min(C.hi, upto)
    for i in range(C.lo, hi + 1):
        if not C.homology_vanishes(i):
            return i
    return INF


def koszul_depth_complex(C: ModuleComplex, top: int | None = None) -> float:
    """n - sup{i : H_i(K(x_1..x_n) (x) C) != 0}, scanning degrees <= top (default C.hi + n)."""
    R = C.ring
    n = R.n
    if not C.terms:
        return INF
    K = koszul_complex(R.variables(), ring=R)
    if top is None:
        top = C.hi + n
    KC = tensor_complexes(K, C, max_degree=top + 1)
    for i in range(min(top, KC.hi), KC.lo - 1, -1):
        if not KC.homology_vanishes(i):
            return n - i
    return INF


def depth_complex(C, method: str = "auto") -> float:
    """Depth of a complex with bounded homology; +inf for an exact complex.

    ``C`` may be a ModuleComplex or a DerivedTensorResult.  Over an Artinian
    ring depth X = -sup H(X), which ``method="auto"`` uses; otherwise (or with
    ``method="koszul"``) the Koszul characterization is computed.
    """
    from .derived import DerivedTensorResult
    if isinstance(C, DerivedTensorResult):
        return C.depth(method=method)
    R = C.ring
    if method == "auto":
        method = "artinian" if R.is_artinian else "koszul"
    if method == "artinian":
        s = homology_sup(C)
        return INF if s == -INF else -s
    if method != "koszul":
        raise ValueError(f"unknown depth method {method!r}")
    return koszul_depth_complex(C)


@dataclass(frozen=True)
class MCMReport:
    is_mcm: bool
    shift: int
    depth: float

    def __bool__(self):
        return self.is_mcm


def is_mcm_complex(C: ModuleComplex, method: str = "auto") -> MCMReport:
    """Shift C so its lowest homology sits in degree 0, then test depth >= dim R."""
    low = homology_inf(C)
    if low == INF:
        raise ExactComplexError("an exact complex has no MCM normalization")
    s = int(low)
    N = shift(C, -s) if s else C
    dep = depth_complex(N, method=method)
    return MCMReport(dep >= C.ring.dim, -s, dep)
