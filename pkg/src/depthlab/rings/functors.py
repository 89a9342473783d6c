"""Tor and Ext of presented modules from a minimal resolution of the first argument."""
from __future__ import annotations

from ..grobner.matrix import Matrix, kron
from .core import PresentedModule, homology_is_zero, homology_module
from .resolution import ResolutionWindow, min_free_resolution


def _tensor_term(res: ResolutionWindow, N: PresentedModule, i: int) -> PresentedModule:
    S = res.ring.S
    degs = [a + b for a in (res.degrees[i] if i < len(res.degrees) else []) for b in N.degrees]
    beta = res.rank(i)
    return PresentedModule(res.ring, degs, kron(Matrix.identity(S, beta), N.relations).cols)


def _tensor_map(res: ResolutionWindow, N: PresentedModule, i: int) -> Matrix:
    S = res.ring.S
    return kron(res.d(i), Matrix.identity(S, N.ngens))


def tor_pieces(res: ResolutionWindow, N: PresentedModule, i: int):
    """(src, d_out, tgt, d_in) of F (x) N at homological degree i."""
    src = _tensor_term(res, N, i)
    tgt = _tensor_term(res, N, i - 1) if i >= 1 else None
    d_out = _tensor_map(res, N, i) if i >= 1 else None
    d_in = _tensor_map(res, N, i + 1) if res.rank(i + 1) else None
    return src, d_out, tgt, d_in


def tor_from_resolution(res: ResolutionWindow, N: PresentedModule, i: int) -> PresentedModule:
    if i >= len(res.degrees):
        return PresentedModule.zero(res.ring)
    if i + 1 > res.window and not res.complete:
        raise ValueError(f"Tor_{i} needs the resolution through F_{i + 1}")
    return homology_module(res.ring, *tor_pieces(res, N, i))


def tor_vanishes_from_resolution(res: ResolutionWindow, N: PresentedModule, i: int) -> bool:
    if i >= len(res.degrees):
        return True
    if i + 1 > res.window and not res.complete:
        raise ValueError(f"Tor_{i} needs the resolution through F_{i + 1}")
    return homology_is_zero(res.ring, *tor_pieces(res, N, i))


def tor_module(M: PresentedModule, N: PresentedModule, i: int) -> PresentedModule:
    """Tor_i^R(M, N) as a presented module."""
    res = min_free_resolution(M, i + 1)
    return tor_from_resolution(res, N, i)


def _hom_term(res: ResolutionWindow, N: PresentedModule, i: int) -> PresentedModule:
    S = res.ring.S
    degs = [b - a for a in (res.degrees[i] if 0 <= i < len(res.degrees) else []) for b in N.degrees]
    beta = res.rank(i)
    return PresentedModule(res.ring, degs, kron(Matrix.identity(S, beta), N.relations).cols)


def _hom_map(res: ResolutionWindow, N: PresentedModule, i: int) -> Matrix:
    """delta^i: Hom(F_i, N) -> Hom(F_{i+1}, N)."""
    S = res.ring.S
    return kron(res.d(i + 1).transpose(), Matrix.identity(S, N.ngens))


def ext_pieces(res: ResolutionWindow, N: PresentedModule, i: int):
    src = _hom_term(res, N, i)
    tgt = _hom_term(res, N, i + 1)
    d_out = _hom_map(res, N, i) if res.rank(i + 1) else None
    if d_out is None:
        tgt = None
    d_in = _hom_map(res, N, i - 1) if i >= 1 and res.rank(i - 1) else None
    return src, d_out, tgt, d_in


def ext_from_resolution(res: ResolutionWindow, N: PresentedModule, i: int) -> PresentedModule:
    if i >= len(res.degrees):
        return PresentedModule.zero(res.ring)
    if i + 1 > res.window and not res.complete:
        raise ValueError(f"Ext^{i} needs the resolution through F_{i + 1}")
    return homology_module(res.ring, *ext_pieces(res, N, i))


def ext_vanishes_from_resolution(res: ResolutionWindow, N: PresentedModule, i: int) -> bool:
    if i >= len(res.degrees):
        return True
    if i + 1 > res.window and not res.complete:
        raise ValueError(f"Ext^{i} needs the resolution through F_{i + 1}")
    return homology_is_zero(res.ring, *ext_pieces(res, N, i))


def ext_module(M: PresentedModule, N: PresentedModule, i: int) -> PresentedModule:
    """Ext^i_R(M, N) as a presented module."""
    res = min_free_resolution(M, i + 1)
    return ext_from_resolution(res, N, i)
