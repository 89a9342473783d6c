"""Derived tensor products in a window, lifting resolutions from R/x to R with
the Eisenbud operator, and the short exact sequence relating tensor products
over R and over R/x."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..grobner.matrix import Matrix, block, kron
from ..grobner.ops import AugmentedBasis, vec_degree
from ..rings.core import PresentedModule, PresentedRing, kernel_vectors
from ..rings.resolution import ResolutionWindow, min_free_resolution
from .core import (ChainMap, ComplexError, FreeComplex, ModuleComplex, module_as_complex, shift,
                   tensor_complexes, twist_complex)
from .depth import InconclusiveDepthError, depth_complex, koszul_depth_complex

INF = math.inf


@dataclass
class DerivedTensorResult:
    """F_M (x) F_N truncated at total degree w; homology valid in degrees <= v = w - 1.

    ``honest`` is F_M (x) N (or M (x) F_N) when one of the resolutions was
    found to be finite inside the window; it represents the derived tensor
    product exactly.
    """

    complex: ModuleComplex
    window: int
    valid_upto: int
    res_M: ResolutionWindow | None
    res_N: ResolutionWindow | None
    honest: ModuleComplex | None = None
    _sup: float | None = field(default=None, repr=False)

    @property
    def ring(self) -> PresentedRing:
        return self.complex.ring

    @property
    def certified_finite(self) -> bool:
        return self.honest is not None

    def _source(self, i: int) -> ModuleComplex:
        if self.honest is not None:
            return self.honest
        if i > self.valid_upto:
            raise InconclusiveDepthError(f"degree {i} lies outside the validity window (<= {self.valid_upto})")
        return self.complex

    def homology(self, i: int) -> PresentedModule:
        return self._source(i).homology(i)

    def homology_vanishes(self, i: int) -> bool:
        return self._source(i).homology_vanishes(i)

    def detected_sup(self) -> float:
        """sup{i <= v : H_i != 0} (the true sup when the result is honest)."""
        if self._sup is None:
            from .depth import homology_sup
            if self.honest is not None:
                self._sup = homology_sup(self.honest)
            else:
                self._sup = homology_sup(self.complex, self.valid_upto)
        return self._sup

    def sound(self, method: str = "auto") -> bool:
        """Whether the window is long enough to read off depth.

        The Koszul route needs w >= s + n + 2; over an Artinian ring the rule
        depth = -sup H only needs the top of the window to be free of homology.
        """
        if self.honest is not None:
            return True
        s = self.detected_sup()
        if s == -INF:
            return False
        if self._method(method) == "artinian":
            return s < self.valid_upto
        return self.window >= s + self.ring.n + 2 and s < self.valid_upto

    def _method(self, method: str) -> str:
        if method == "auto":
            return "artinian" if self.ring.is_artinian else "koszul"
        return method

    def depth(self, method: str = "auto") -> float:
        if self.honest is not None:
            return depth_complex(self.honest, method=method)
        if not self.sound(method):
            s = self.detected_sup()
            raise InconclusiveDepthError(
                f"window {self.window} too short for homology up to degree {s} "
                f"(needs w >= s + n + 2 = {s + self.ring.n + 2})")
        s = int(self.detected_sup())
        if self._method(method) == "artinian":
            return -s
        return koszul_depth_complex(self.complex, top=s + self.ring.n)


def derived_tensor(M: PresentedModule, N: PresentedModule, w: int, sides: str = "both") -> DerivedTensorResult:
    """F_M^{<=w} (x) F_N^{<=w}, kept through total degree w.

    ``sides="left"`` uses F_M^{<=w} (x) N and ``sides="right"`` uses
    M (x) F_N^{<=w}; both have the same validity window and avoid resolving a
    module whose Betti numbers grow fast.
    """
    if sides not in ("both", "left", "right"):
        raise ValueError(f"unknown sides {sides!r}")
    resM = min_free_resolution(M, w, decide=True) if sides != "right" else None
    resN = min_free_resolution(N, w, decide=True) if sides != "left" else None
    if sides == "left":
        T = tensor_complexes(resM.as_complex(), module_as_complex(N), max_degree=w)
    elif sides == "right":
        T = tensor_complexes(module_as_complex(M), resN.as_complex(), max_degree=w)
    else:
        T = tensor_complexes(resM.as_complex(), resN.as_complex(), max_degree=w)
    honest = None
    if resM is not None and resM.complete:
        honest = tensor_complexes(resM.as_complex(), module_as_complex(N))
    elif resN is not None and resN.complete:
        honest = tensor_complexes(module_as_complex(M), resN.as_complex())
    return DerivedTensorResult(T, w, w - 1, resM, resN, honest)


# --- lifting resolutions from R/x to R

@dataclass
class EisenbudLift:
    """F^R with (F^R)_m = F_{m-1} (+) F_m and the operators t_m: F_m -> F_{m-2}
    over R with x t_m = -d_{m-1} d_m (lifted entrywise)."""

    complex: FreeComplex
    t: dict[int, Matrix]
    base: ResolutionWindow
    ring: PresentedRing
    x: object

    def tbar(self, m: int) -> Matrix:
        Rbar = self.base.ring
        t = self.t.get(m)
        if t is None:
            return Matrix.zero(Rbar.S, self.base.rank(m - 2), self.base.rank(m))
        return Rbar.reduce_matrix(t)

    def tbar_commutes(self) -> bool:
        """tbar_m d_{m+1} = d_{m-1} tbar_{m+1} over R/x."""
        F = self.base
        Rbar = F.ring
        for m in range(2, F.length):
            lhs = self.tbar(m) * F.d(m + 1)
            rhs = F.d(m - 1) * self.tbar(m + 1)
            if not Rbar.reduce_matrix(lhs - rhs).is_zero():
                return False
        return True

    def tbar_chain_map(self) -> ChainMap:
        """tbar as a chain map F -> F[2] (degree -2 on F); F[2] carries the sign (+1)."""
        F = self.base.as_complex()
        return ChainMap(F, shift(F, 2), {m: self.tbar(m) for m in range(2, self.base.length + 1)})


def _divide_by(R: PresentedRing, x, A: Matrix) -> Matrix:
    """The unique matrix B over R with x B = A (x a nonzerodivisor)."""
    S = R.S
    F = S.field
    xv = {(0, e): c for e, c in x.terms.items()}
    AB = AugmentedBasis(S, [xv], [0], [x.degree()], relations=R.relations)
    cols = []
    for col in A.cols:
        out = {}
        parts: dict[int, dict] = {}
        for (i, e), c in col.items():
            parts.setdefault(i, {})[e] = c
        for i, p in parts.items():
            q = AB.lift({(0, e): c for e, c in p.items()})
            if q is None:
                raise ComplexError("lift inconsistency: entry not divisible by x")
            for (_, e), c in q.items():
                out[(i, e)] = c
        cols.append(R.reduce_vec(out))
    return Matrix(S, A.nrows, A.ncols, cols)


def lift_resolution_eisenbud(F: ResolutionWindow, R: PresentedRing, x) -> EisenbudLift:
    """Lift a minimal resolution over R/x to a free resolution over R of the same module."""
    from ..rings.measure import annihilator_of_element
    S = R.S
    x = R.reduce(S(x))
    if x.is_zero() or annihilator_of_element(R, x):
        raise ComplexError("x must be a nonzerodivisor on R")
    Rbar = F.ring
    if not Rbar.is_zero(x):
        raise ComplexError("the resolution must live over R/x")
    dx = x.degree()
    # a finite resolution of length L lifts to one of length L + 1
    w = F.length + 1 if F.complete else F.length
    hat = {m: R.reduce_matrix(F.d(m)) for m in range(1, w + 1)}
    t: dict[int, Matrix] = {}
    for m in range(2, w + 1):
        prod = R.reduce_matrix(hat[m - 1] * hat[m])
        t[m] = -_divide_by(R, x, prod)
    degrees = {}
    for m in range(0, w + 1):
        prev = [d + dx for d in F.degrees[m - 1]] if m >= 1 else []
        degrees[m] = prev + (list(F.degrees[m]) if m < len(F.degrees) else [])
    maps = {}
    for m in range(1, w + 1):
        r2, r1, r0 = F.rank(m - 2), F.rank(m - 1), F.rank(m)
        top_left = hat[m - 1] if m >= 2 else Matrix.zero(S, r2, r1)
        top_right = t[m].scale(S.const(-1) if m % 2 else S.one()) if m >= 2 else Matrix.zero(S, r2, r0)
        sx = x if (m - 1) % 2 == 0 else -x
        bottom_left = Matrix.identity(S, r1).scale(sx)
        maps[m] = block([[top_left, top_right], [bottom_left, hat[m]]])
    FR = FreeComplex(R, degrees, maps)
    return EisenbudLift(FR, t, F, R, x)


# --- the short exact sequence

@dataclass
class SESResult:
    left: ModuleComplex
    middle: ModuleComplex
    right: ModuleComplex
    inclusion: ChainMap
    surjection: ChainMap
    lift: EisenbudLift
    window: int

    @property
    def valid_upto(self) -> int:
        return self.window - 1

    def ranks_split(self) -> bool:
        # above the truncation the left complex carries one extra term
        idx = self.middle.degrees_range()
        return all(self.middle.rank(n) == self.left.rank(n) + self.right.rank(n) for n in idx)


def ses_derived_tensor(M: PresentedModule, N: PresentedModule, R: PresentedRing, x, w: int) -> SESResult:
    """0 -> (M (x)^L_{R/x} N)[1] -> M (x)^L_R N -> M (x)^L_{R/x} N -> 0 for R/x-modules M, N.

    All three complexes are computed over R/x from the lifted resolution of N.
    """
    Rbar = N.ring
    S = Rbar.S
    F = min_free_resolution(N, w)
    L = lift_resolution_eisenbud(F, R, x)
    FRbar = FreeComplex(Rbar, {m: L.complex.term(m).degrees for m in L.complex.degrees_range()},
                        {m: Rbar.reduce_matrix(d) for m, d in L.complex.maps.items()})
    Mc = module_as_complex(M.base_change(Rbar) if M.ring is not Rbar else M)
    Fc = F.as_complex()
    middle = tensor_complexes(Mc, FRbar)
    right = tensor_complexes(Mc, Fc)
    # the subcomplex sits in internal degrees raised by deg x
    left = tensor_complexes(Mc, shift(twist_complex(Fc, -L.x.degree()), 1))
    g = Mc.rank(0)
    inc, sur = {}, {}
    for m in middle.degrees_range():
        r1, r0 = F.rank(m - 1), F.rank(m)
        sgn = S.one() if m % 2 == 0 else S.const(-1)
        emb = block([[Matrix.identity(S, r1).scale(sgn)], [Matrix.zero(S, r0, r1)]])
        proj = block([[Matrix.zero(S, r0, r1), Matrix.identity(S, r0)]])
        if r1:
            inc[m] = kron(Matrix.identity(S, g), emb)
        if r0:
            sur[m] = kron(Matrix.identity(S, g), proj)
    return SESResult(left, middle, right, ChainMap(left, middle, inc), ChainMap(middle, right, sur), L, w)


# --- exactness of the long exact sequence in homology

def _span_contains(ring: PresentedRing, gens: list[dict], mod: list[dict], shifts, vecs: list[dict]) -> bool:
    vecs = [v for v in vecs if v]
    if not vecs:
        return True
    base = [g for g in gens + mod if g]
    if not base:
        return all(not ring.reduce_vec(v) for v in vecs)
    AB = AugmentedBasis(ring.S, base, list(shifts), relations=ring.relations, track=False)
    return all(AB.contains(v) for v in vecs)


def _same_subquotient(ring, A: list[dict], B: list[dict], mod: list[dict], shifts) -> bool:
    return _span_contains(ring, B, mod, shifts, A) and _span_contains(ring, A, mod, shifts, B)


def _preimage(ring: PresentedRing, f: Matrix, Z: list[dict], src_shifts, tgt_shifts, tgt_mod: list[dict]) -> list[dict]:
    """{z in span(Z) : f z in span(tgt_mod)} as vectors."""
    S = ring.S
    Z = [z for z in Z if z]
    if not Z:
        return []
    zdeg = [vec_degree(S, z, src_shifts) for z in Z]
    P = Matrix(S, f.nrows, len(Z), [f.apply(z) for z in Z])
    T = PresentedModule(ring, tgt_shifts, [v for v in tgt_mod if v])
    coeffs = kernel_vectors(ring, P, zdeg, T)
    Zm = Matrix(S, len(src_shifts), len(Z), Z)
    return [Zm.apply(c) for c in coeffs]


def _connecting(ses: SESResult, i: int, z: dict) -> dict:
    """delta[z] in L_{i-1} for a cycle z of the right complex in degree i."""
    Mid, L = ses.middle, ses.left
    S = Mid.ring.S
    F = ses.lift.base
    g = ses.middle.rank(0) // max(F.rank(0), 1)
    r1, r0 = F.rank(i - 1), F.rank(i)
    sec = kron(Matrix.identity(S, g), block([[Matrix.zero(S, r1, r0)], [Matrix.identity(S, r0)]]))
    y = Mid.d(i).apply(sec.apply(z))
    # read off the first summand of Mid_{i-1} = M (x) (F_{i-2} (+) F_{i-1})
    a, b = F.rank(i - 2), F.rank(i - 1)
    out = {}
    sgn = -1 if (i - 1) % 2 else 1
    Fld = S.field
    for (row, e), c in y.items():
        blk, pos = divmod(row, a + b)
        if pos < a:
            out[(blk * a + pos, e)] = c if sgn == 1 else Fld.neg(c)
    return out


def les_exactness(ses: SESResult, upto: int | None = None) -> list[tuple[str, int, bool]]:
    """Check exactness of ... -> H_i(L) -> H_i(Mid) -> H_i(R) -> H_{i-1}(L) -> ...
    at every spot with i <= upto (default the validity bound)."""
    ring = ses.middle.ring
    upto = ses.valid_upto if upto is None else upto
    L, Mid, Rt = ses.left, ses.middle, ses.right
    out = []
    lo = min(x for x in (L.lo, Mid.lo, Rt.lo) if x is not None)
    for i in range(lo, upto + 1):
        # at H_i(Mid)
        im = [ses.inclusion.f(i).apply(z) for z in L.cycles(i)]
        ker = _preimage(ring, ses.surjection.f(i), Mid.cycles(i), Mid.term(i).degrees,
                        Rt.term(i).degrees, Rt.boundaries(i))
        out.append(("middle", i, _same_subquotient(ring, im, ker, Mid.boundaries(i), Mid.term(i).degrees)))
        # at H_i(Right)
        im = [ses.surjection.f(i).apply(z) for z in Mid.cycles(i)]
        Zr = [z for z in Rt.cycles(i) if z]
        deltas = [_connecting(ses, i, z) for z in Zr]
        if Zr and L.rank(i - 1):
            Dm = Matrix(ring.S, L.rank(i - 1), len(Zr), deltas)
            zdeg = [vec_degree(ring.S, z, Rt.term(i).degrees) for z in Zr]
            T = PresentedModule(ring, L.term(i - 1).degrees, [v for v in L.boundaries(i - 1) if v])
            coeffs = kernel_vectors(ring, Dm, zdeg, T)
            Zm = Matrix(ring.S, Rt.rank(i), len(Zr), Zr)
            ker = [Zm.apply(c) for c in coeffs]
        else:
            ker = Zr
        out.append(("right", i, _same_subquotient(ring, im, ker, Rt.boundaries(i), Rt.term(i).degrees)))
        # at H_{i-1}(Left)
        if L.rank(i - 1):
            im = deltas
            ker = _preimage(ring, ses.inclusion.f(i - 1), L.cycles(i - 1), L.term(i - 1).degrees,
                            Mid.term(i - 1).degrees, Mid.boundaries(i - 1))
            out.append(("left", i - 1, _same_subquotient(ring, im, ker, L.boundaries(i - 1),
                                                           L.term(i - 1).degrees)))
    return out
