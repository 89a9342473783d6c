"""Bounded complexes of presented modules, chain maps, and the basic operations:
tensor products, shifts, cones, brutal truncations and homology.

Homological grading: d_i maps C_i to C_{i-1}.  Shifts follow
(C[s])_i = C_{i-s} with differential (-1)^s d.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from ..grobner.matrix import Matrix, block, kron
from ..rings.core import PresentedModule, PresentedRing, homology_is_zero, homology_module, kernel_vectors


class ComplexError(ValueError):
    pass


class ModuleComplex:
    """C_lo <- ... <- C_hi with C_i a PresentedModule and d_i a matrix on generators."""

    def __init__(self, ring: PresentedRing, terms: Mapping[int, PresentedModule],
                 maps: Mapping[int, Matrix] | None = None, name: str | None = None):
        self.ring = ring
        self.terms = {i: M for i, M in terms.items() if M.ngens > 0}
        self.maps = {}
        for i, d in (maps or {}).items():
            if i in self.terms and (i - 1) in self.terms:
                src, tgt = self.terms[i], self.terms[i - 1]
                if (d.nrows, d.ncols) != (tgt.ngens, src.ngens):
                    raise ComplexError(f"d_{i} has shape {d.nrows}x{d.ncols}, expected {tgt.ngens}x{src.ngens}")
                self.maps[i] = d
        self.name = name

    # --- shape
    @property
    def lo(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        return max(self.terms) if self.terms else None

    def degrees_range(self) -> range:
        if not self.terms:
            return range(0)
        return range(self.lo, self.hi + 1)

    def term(self, i: int) -> PresentedModule:
        return self.terms.get(i) or PresentedModule.zero(self.ring)

    def rank(self, i: int) -> int:
        return self.term(i).ngens

    def ranks(self) -> dict[int, int]:
        return {i: self.rank(i) for i in self.degrees_range()}

    def d(self, i: int) -> Matrix:
        if i in self.maps:
            return self.maps[i]
        return Matrix.zero(self.ring.S, self.rank(i - 1), self.rank(i))

    def is_free(self) -> bool:
        return all(M.nrels == 0 for M in self.terms.values())

    def __repr__(self):
        r = ", ".join(f"{i}:{self.rank(i)}" for i in self.degrees_range())
        return f"<complex [{r}] over {self.ring!r}>"

    # --- checks
    def check_d_squared(self) -> bool:
        """d_{i-1} d_i = 0 modulo the relations of C_{i-2}, for all i."""
        for i in self.degrees_range():
            if (i - 2) not in self.terms:
                continue
            comp = self.d(i - 1) * self.d(i)
            tgt = self.term(i - 2)
            if not all(tgt.contains(c) for c in comp.cols if c):
                return False
        return True

    def check_well_defined(self) -> bool:
        """Each d_i sends relations of C_i into relations of C_{i-1}."""
        for i, d in self.maps.items():
            tgt = self.term(i - 1)
            for rel in self.term(i).relations.cols:
                if not tgt.contains(d.apply(rel)):
                    return False
        return True

    # --- homology
    def homology_pieces(self, i: int):
        src = self.term(i)
        if (i - 1) in self.terms:
            d_out, tgt = self.d(i), self.term(i - 1)
        else:
            d_out = tgt = None
        d_in = self.d(i + 1) if (i + 1) in self.terms else None
        return src, d_out, tgt, d_in

    def homology(self, i: int) -> PresentedModule:
        if i not in self.terms:
            return PresentedModule.zero(self.ring)
        return homology_module(self.ring, *self.homology_pieces(i))

    def homology_vanishes(self, i: int) -> bool:
        if i not in self.terms:
            return True
        return homology_is_zero(self.ring, *self.homology_pieces(i))

    def homology_support(self, upto: int | None = None) -> list[int]:
        """Degrees (<= upto) where homology is nonzero."""
        return [i for i in self.degrees_range() if (upto is None or i <= upto) and not self.homology_vanishes(i)]

    def is_exact(self) -> bool:
        return not self.homology_support()

    def cycles(self, i: int) -> list[dict]:
        src = self.term(i)
        z = self.ring.S.zero_exp
        if (i - 1) not in self.terms:
            return [{(j, z): self.ring.field.one} for j in range(src.ngens)]
        return kernel_vectors(self.ring, self.d(i), src.degrees, self.term(i - 1))

    def boundaries(self, i: int) -> list[dict]:
        """Generators of the image of d_{i+1} together with the relations of C_i."""
        out = list(self.term(i).relations.cols)
        if (i + 1) in self.terms:
            out += [c for c in self.d(i + 1).cols if c]
        return out


class FreeComplex(ModuleComplex):
    """A complex of graded free modules given by generator degrees per term."""

    def __init__(self, ring: PresentedRing, degrees: Mapping[int, Sequence[int]],
                 maps: Mapping[int, Matrix] | None = None, name: str | None = None):
        terms = {i: PresentedModule.free(ring, list(d)) for i, d in degrees.items()}
        super().__init__(ring, terms, maps, name)

    def shifts(self, i: int) -> list[int]:
        return list(self.term(i).degrees)


def free_or_module(ring, terms, maps, name=None) -> ModuleComplex:
    if all(M.nrels == 0 for M in terms.values()):
        return FreeComplex(ring, {i: M.degrees for i, M in terms.items()}, maps, name)
    return ModuleComplex(ring, terms, maps, name)


def module_as_complex(M: PresentedModule, degree: int = 0) -> ModuleComplex:
    """M[degree]: M concentrated in the given homological degree."""
    return free_or_module(M.ring, {degree: M}, {})


class ChainMap:
    """f: C -> D given by matrices f_i: C_i -> D_i on generators."""

    def __init__(self, source: ModuleComplex, target: ModuleComplex, maps: Mapping[int, Matrix]):
        self.source = source
        self.target = target
        self.maps = dict(maps)

    def f(self, i: int) -> Matrix:
        if i in self.maps:
            return self.maps[i]
        return Matrix.zero(self.source.ring.S, self.target.rank(i), self.source.rank(i))

    def is_chain_map(self) -> bool:
        C, D = self.source, self.target
        for i in C.degrees_range():
            tgt = D.term(i)
            fi = self.f(i)
            for rel in C.term(i).relations.cols:
                if not tgt.contains(fi.apply(rel)):
                    return False
            if C.rank(i) == 0:
                continue
            diff = D.d(i) * fi - self.f(i - 1) * C.d(i)
            tgt = D.term(i - 1)
            if not all(tgt.contains(c) for c in diff.cols if c):
                return False
        return True


def identity_map(C: ModuleComplex) -> ChainMap:
    S = C.ring.S
    return ChainMap(C, C, {i: Matrix.identity(S, C.rank(i)) for i in C.degrees_range()})


# --- constructions

def _check_same_ring(*cs):
    rings = {id(c.ring) for c in cs}
    if len(rings) > 1 and len({c.ring for c in cs}) > 1:
        raise ComplexError("complexes live over different rings")


def tensor_complexes(F: ModuleComplex, G: ModuleComplex, max_degree: int | None = None) -> ModuleComplex:
    """(F (x) G)_n = sum F_i (x) G_{n-i}, d(f (x) g) = df (x) g + (-1)^|f| f (x) dg.

    Terms of total degree above max_degree are dropped.
    """
    _check_same_ring(F, G)
    ring = F.ring
    S = ring.S
    if not F.terms or not G.terms:
        return ModuleComplex(ring, {})
    lo, hi = F.lo + G.lo, F.hi + G.hi
    if max_degree is not None:
        hi = min(hi, max_degree)
    layout: dict[int, list[tuple[int, int, int]]] = {}
    terms: dict[int, PresentedModule] = {}
    for n in range(lo, hi + 1):
        blocks = []
        offset = 0
        pieces = []
        for i in F.degrees_range():
            j = n - i
            if F.rank(i) == 0 or G.rank(j) == 0:
                continue
            P = F.term(i).tensor(G.term(j))
            blocks.append((i, j, offset))
            offset += P.ngens
            pieces.append(P)
        if not pieces:
            continue
        layout[n] = blocks
        terms[n] = pieces[0].direct_sum(*pieces[1:]) if len(pieces) > 1 else pieces[0]
    maps = {}
    F0 = S.field
    for n, blocks in layout.items():
        if (n - 1) not in layout:
            continue
        tgt_off = {(i, j): off for i, j, off in layout[n - 1]}
        cols = [dict() for _ in range(terms[n].ngens)]
        for i, j, off in blocks:
            gi, gj = F.rank(i), G.rank(j)
            if (i - 1, j) in tgt_off:
                piece = kron(F.d(i), Matrix.identity(S, gj))
                to = tgt_off[(i - 1, j)]
                for c, col in enumerate(piece.cols):
                    for (r, e), x in col.items():
                        cols[off + c][(to + r, e)] = x
            if (i, j - 1) in tgt_off:
                piece = kron(Matrix.identity(S, gi), G.d(j))
                to = tgt_off[(i, j - 1)]
                neg = i % 2 == 1
                for c, col in enumerate(piece.cols):
                    for (r, e), x in col.items():
                        cols[off + c][(to + r, e)] = F0.neg(x) if neg else x
        maps[n] = Matrix(S, terms[n - 1].ngens, terms[n].ngens, cols)
    return free_or_module(ring, terms, maps)


def shift(C: ModuleComplex, s: int) -> ModuleComplex:
    """C[s]: (C[s])_i = C_{i-s}, differential (-1)^s d."""
    terms = {i + s: M for i, M in C.terms.items()}
    maps = {i + s: (-d if s % 2 else d) for i, d in C.maps.items()}
    return free_or_module(C.ring, terms, maps)


def twist_complex(C: ModuleComplex, a: int) -> ModuleComplex:
    """Internal degree twist C(a) of every term."""
    return free_or_module(C.ring, {i: M.twist(a) for i, M in C.terms.items()}, C.maps)


def cone(f: ChainMap, check: bool = True) -> ModuleComplex:
    """cone(f)_n = D_n (+) C_{n-1}, d = [[d_D, f_{n-1}], [0, -d_C]]."""
    if check and not f.is_chain_map():
        raise ComplexError("cone needs a chain map")
    C, D = f.source, f.target
    ring = C.ring
    S = ring.S
    idx = set(D.degrees_range()) | {i + 1 for i in C.degrees_range()}
    if not idx:
        return ModuleComplex(ring, {})
    terms = {}
    for n in range(min(idx), max(idx) + 1):
        terms[n] = D.term(n).direct_sum(C.term(n - 1))
    maps = {}
    for n in terms:
        if (n - 1) not in terms:
            continue
        top = [D.d(n), f.f(n - 1)]
        bottom = [Matrix.zero(S, C.rank(n - 2), D.rank(n)), -C.d(n - 1)]
        maps[n] = block([top, bottom])
    return free_or_module(ring, terms, maps)


def truncate_ge(C: ModuleComplex, i: int) -> ModuleComplex:
    """Brutal truncation ... -> C_{i+1} -> C_i -> 0 (a quotient of C)."""
    terms = {k: M for k, M in C.terms.items() if k >= i}
    maps = {k: d for k, d in C.maps.items() if k > i}
    return free_or_module(C.ring, terms, maps)


def truncate_co_ge(C: ModuleComplex, i: int) -> ModuleComplex:
    """Brutal truncation 0 -> C^i -> C^{i+1} -> ... in cohomological grading,
    i.e. the homological degrees <= -i (a subcomplex of C)."""
    terms = {k: M for k, M in C.terms.items() if k <= -i}
    maps = {k: d for k, d in C.maps.items() if k <= -i}
    return free_or_module(C.ring, terms, maps)


def truncation_surjection(C: ModuleComplex, i: int) -> ChainMap:
    T = truncate_ge(C, i)
    S = C.ring.S
    return ChainMap(C, T, {k: Matrix.identity(S, C.rank(k)) for k in T.degrees_range()})


def truncation_injection(C: ModuleComplex, i: int) -> ChainMap:
    T = truncate_co_ge(C, i)
    S = C.ring.S
    return ChainMap(T, C, {k: Matrix.identity(S, C.rank(k)) for k in T.degrees_range()})


def reshape(C: ModuleComplex, op: str, arg=None) -> ModuleComplex:
    """Dispatch for shift(s), cone(chain map), truncate_ge(i), truncate_co_ge(i)."""
    if op == "shift":
        return shift(C, int(arg))
    if op == "cone":
        return cone(arg if isinstance(arg, ChainMap) else identity_map(C))
    if op == "truncate_ge":
        return truncate_ge(C, int(arg))
    if op == "truncate_co_ge":
        return truncate_co_ge(C, int(arg))
    raise ComplexError(f"unknown reshape operation {op!r}")


def koszul_complex(elems: Sequence, ring: PresentedRing | None = None,
                   M: PresentedModule | None = None) -> ModuleComplex:
    """K(elems; R), or K(elems) (x) M when a module is given."""
    from ..rings.measure import koszul_matrices
    if ring is None:
        if M is None:
            raise ComplexError("koszul_complex needs a ring or a module")
        ring = M.ring
    _, degrees, mats = koszul_matrices(ring, list(elems))
    K = FreeComplex(ring, {i: d for i, d in enumerate(degrees)},
                    {i: mats[i] for i in range(1, len(degrees))})
    if M is None:
        return K
    return tensor_complexes(K, module_as_complex(M))


def direct_sum_complexes(*cs: ModuleComplex) -> ModuleComplex:
    ring = cs[0].ring
    S = ring.S
    idx = set()
    for c in cs:
        idx |= set(c.degrees_range())
    terms, maps = {}, {}
    for n in idx:
        parts = [c.term(n) for c in cs]
        terms[n] = parts[0].direct_sum(*parts[1:])
    from ..grobner.matrix import block_diag
    for n in idx:
        if (n - 1) in idx:
            mats = [c.d(n) for c in cs]
            nrows = sum(m.nrows for m in mats)
            bd = block_diag(*mats) if any(m.ncols for m in mats) else Matrix.zero(S, nrows, 0)
            maps[n] = Matrix(S, nrows, bd.ncols, bd.cols)
    return free_or_module(ring, terms, maps)
