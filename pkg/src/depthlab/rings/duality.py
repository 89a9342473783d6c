"""Canonical modules and duals."""
from __future__ import annotations

from ..grobner.matrix import Matrix
from .core import PresentedModule, PresentedRing, hom, homology_module
from .resolution import min_free_resolution


def canonical_module(R: PresentedRing) -> PresentedModule:
    """omega_R = Ext^{n-d}_S(R, S(-sum of variable degrees)), read as an R-module.

    With this twist omega of a polynomial ring is S(-n) in the standard grading.
    """
    cached = getattr(R, "_canonical", None)
    if cached is not None:
        return cached
    if not R.is_cm:
        raise ValueError("canonical module requested over a ring that is not Cohen-Macaulay")
    S = R.S
    top = sum(S.degrees)
    if not R.relations:
        omega = PresentedModule.free(R, [top])
    else:
        P = PresentedRing(S)
        c = R.n - R.dim
        quot = PresentedModule.quotient(P, R.ideal_gens)
        res = min_free_resolution(quot, c + 1)
        src = PresentedModule.free(P, [top - a for a in res.degrees[c]])
        d_out = res.d(c + 1).transpose() if res.rank(c + 1) else None
        tgt = PresentedModule.free(P, [top - a for a in res.degrees[c + 1]]) if d_out is not None else None
        d_in = res.d(c).transpose() if c >= 1 else None
        H = homology_module(P, src, d_out, tgt, d_in)
        omega = H.base_change(R).minimize()
    R._canonical = omega
    return omega


def dual(M: PresentedModule, target: str = "ring") -> PresentedModule:
    """M* = Hom(M, R) or M^v = Hom(M, omega_R)."""
    if target == "ring":
        return hom(M, PresentedModule.free(M.ring, [0]))
    if target == "canonical":
        return hom(M, canonical_module(M.ring))
    raise ValueError(f"unknown dual target {target!r}")


def bidual_map(M: PresentedModule):
    """Matrix of the biduality map M -> M** together with the presentations.

    Returns (Mm, Mstar_gens, theta) where Mstar_gens is the matrix whose
    columns generate M* inside F_0^*, and theta = Mstar_gens^T maps F_0 into
    the free module on those generators.
    """
    from ..grobner.ops import kernel_of_map
    Mm = M.minimize()
    R = Mm.ring
    S = R.S
    if Mm.nrels == 0:
        B = Matrix.identity(S, Mm.ngens)
    else:
        B = kernel_of_map(Mm.relations.transpose(), [-d for d in Mm.col_degrees],
                          [-d for d in Mm.degrees], R.relations)
    return Mm, B, B.transpose()
