"""Minimal graded free resolutions and the constructions built on them:
syzygy modules and the Auslander transpose."""
from __future__ import annotations

from dataclasses import dataclass, field
from ..grobner.matrix import Matrix
from ..grobner.ops import kernel_of_map
from .core import PresentedModule, PresentedRing


@dataclass
class ResolutionWindow:
    """F_0 <- F_1 <- ... <- F_w, a minimal free resolution computed to length w.

    ``maps[i]`` is d_i: F_i -> F_{i-1} for i >= 1 (``maps[0]`` is unused).
    ``complete`` records that F_{len} was found to be the last nonzero term.
    """

    module: PresentedModule
    window: int
    degrees: list[list[int]]
    maps: list[Matrix | None]
    complete: bool = False
    ring: PresentedRing = field(init=False)

    def __post_init__(self):
        self.ring = self.module.ring

    def betti(self) -> list[int]:
        b = [len(d) for d in self.degrees]
        return b + [0] * (self.window + 1 - len(b))

    def graded_betti(self) -> list[dict[int, int]]:
        out = []
        for degs in self.degrees:
            t: dict[int, int] = {}
            for d in degs:
                t[d] = t.get(d, 0) + 1
            out.append(dict(sorted(t.items())))
        return out

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    @property
    def pd(self) -> int | None:
        """Projective dimension if the resolution terminated inside the window."""
        if not self.complete:
            return None
        if self.module.ngens == 0:
            return -1
        return self.length

    def rank(self, i: int) -> int:
        return len(self.degrees[i]) if 0 <= i < len(self.degrees) else 0

    def d(self, i: int) -> Matrix:
        """d_i as a matrix (zero matrix outside the computed range)."""
        S = self.ring.S
        if 1 <= i < len(self.maps) and self.maps[i] is not None:
            return self.maps[i]
        return Matrix.zero(S, self.rank(i - 1), self.rank(i))

    def free_module(self, i: int) -> PresentedModule:
        return PresentedModule.free(self.ring, self.degrees[i] if 0 <= i < len(self.degrees) else [])

    def as_complex(self):
        from ..complexes import FreeComplex
        mats = {i: self.d(i) for i in range(1, len(self.degrees))}
        return FreeComplex(self.ring, {i: list(d) for i, d in enumerate(self.degrees)}, mats)


def min_free_resolution(M: PresentedModule, window: int, decide: bool = False) -> ResolutionWindow:
    """Minimal free resolution of M through F_window.

    With ``decide`` one extra kernel is computed so that a resolution of
    length exactly ``window`` is recognised as complete.
    """
    Mm = M.minimize()
    ring = Mm.ring
    S = ring.S
    degrees = [list(Mm.degrees)]
    maps: list[Matrix | None] = [None]
    complete = False
    if Mm.ngens == 0:
        return ResolutionWindow(Mm, window, [[]], [None], complete=True)
    if window >= 1:
        d1 = Mm.relations
        if d1.ncols == 0:
            complete = True
        else:
            degrees.append(list(Mm.col_degrees))
            maps.append(d1)
            for i in range(2, window + 1):
                prev = maps[-1]
                K = kernel_of_map(prev, degrees[-2], degrees[-1], ring.relations)
                if K.ncols == 0:
                    complete = True
                    break
                K = ring.reduce_matrix(K)
                degrees.append([K.column_degree(j, degrees[-1]) for j in range(K.ncols)])
                maps.append(K)
    elif Mm.nrels == 0:
        complete = True
    res = ResolutionWindow(Mm, window, degrees, maps, complete=complete)
    return decide_tail(res) if decide else res


def decide_tail(res: ResolutionWindow) -> ResolutionWindow:
    """If the last computed map has zero kernel, mark the resolution complete."""
    if res.complete or res.length < 1:
        return res
    ring = res.ring
    K = kernel_of_map(res.d(res.length), res.degrees[-2], res.degrees[-1], ring.relations)
    if K.ncols == 0:
        res.complete = True
    return res


def syzygy(M: PresentedModule, i: int = 1) -> PresentedModule:
    """Omega^i(M) = coker(d_{i+1}) with the degrees of F_i."""
    if i == 0:
        return M.minimize()
    res = min_free_resolution(M, i + 1)
    ring = res.ring
    if i >= len(res.degrees):
        return PresentedModule.zero(ring)
    return PresentedModule(ring, res.degrees[i], res.d(i + 1).cols, minimal=True)


def transpose(M: PresentedModule) -> PresentedModule:
    """Auslander transpose coker(d_1^T: F_0^* -> F_1^*) of a minimal presentation."""
    Mm = M.minimize()
    ring = Mm.ring
    if Mm.nrels == 0:
        return PresentedModule.zero(ring)
    A = Mm.relations
    return PresentedModule(ring, [-d for d in Mm.col_degrees], A.transpose().cols).minimize()


def projective_dimension(M: PresentedModule, window: int) -> int | None:
    return min_free_resolution(M, window, decide=True).pd


def betti_numbers(M: PresentedModule, window: int) -> list[int]:
    return min_free_resolution(M, window).betti()
