"""Graded quotient rings R = S/I and finitely presented graded R-modules.

A module is the cokernel of a homogeneous matrix: generators e_i of degree
``degrees[i]`` modulo the columns of ``relations``.  Entries are kept in
normal form modulo I.  Everything is graded-local: the maximal ideal is the
one generated by the variables, and "minimal" means entries in that ideal.
"""
from __future__ import annotations

from functools import cached_property
from typing import Sequence

from ..grobner.matrix import (Matrix, kron, poly_times_vec, vec_add, vec_components,
                              vec_from_components, vec_neg, vec_shift_components)
from ..grobner.ops import (AugmentedBasis, buchberger, dim_of_monomial_quotient, hilbert_function,
                           hilbert_numerator, ideal_basis, minimal_generators, relation_vectors,
                           total_length, vec_degree)
from ..grobner.poly import Poly, PolyRing


class PresentedRing:
    """R = S/I for a homogeneous ideal I of a positively graded polynomial ring S."""

    def __init__(self, S: PolyRing, ideal: Sequence = (), name: str | None = None):
        self.S = S
        gens = [S(g) for g in ideal]
        gens = [g for g in gens if not g.is_zero()]
        for g in gens:
            if not g.is_homogeneous():
                raise ValueError(f"ideal generator {g} is not homogeneous")
        self.ideal_gens = gens
        self.relations = ideal_basis(S, gens) if gens else []
        self.gb = buchberger([Poly(S, h) for h in self.relations], ring=S, rank=1)
        self.name = name

    # --- basic data
    @property
    def field(self):
        return self.S.field

    @property
    def n(self) -> int:
        return self.S.n

    def variables(self) -> list[Poly]:
        return self.S.gens()

    def __call__(self, x) -> Poly:
        return self.reduce(self.S(x))

    def __eq__(self, other):
        return isinstance(other, PresentedRing) and self.S == other.S and self.relations == other.relations

    def __hash__(self):
        return hash((self.S, len(self.relations)))

    def __repr__(self):
        if not self.ideal_gens:
            return repr(self.S)
        return f"{self.S!r}/({', '.join(map(repr, self.ideal_gens))})"

    def is_zero_ring(self) -> bool:
        return self.gb.is_unit_ideal()

    # --- normal forms modulo I
    def reduce_terms(self, p: dict) -> dict:
        if not self.relations or not p:
            return p
        r = self.gb.engine.reduce({(0, e): c for e, c in p.items()})[0]
        return {e: c for (_, e), c in r.items()}

    def reduce(self, p: Poly) -> Poly:
        return Poly(self.S, self.reduce_terms(p.terms))

    def reduce_vec(self, v: dict) -> dict:
        if not self.relations or not v:
            return v
        parts = vec_components(v)
        return vec_from_components({c: r for c, p in parts.items() if (r := self.reduce_terms(p))})

    def reduce_matrix(self, A: Matrix) -> Matrix:
        return Matrix(A.ring, A.nrows, A.ncols, [self.reduce_vec(c) for c in A.cols])

    def is_zero(self, p) -> bool:
        return not self.reduce_terms(self.S(p).terms)

    # --- invariants
    @cached_property
    def dim(self) -> int:
        return dim_of_monomial_quotient([e for (_, e) in self.gb.leads], self.n)

    @cached_property
    def depth(self) -> int:
        from .measure import measure
        return measure(PresentedModule.free(self, [0])).depth

    @property
    def is_cm(self) -> bool:
        return self.depth == self.dim

    @property
    def is_artinian(self) -> bool:
        return self.dim == 0

    @cached_property
    def is_gorenstein(self) -> bool:
        from .duality import canonical_module
        if not self.is_cm:
            return False
        return canonical_module(self).ngens == 1

    def quotient(self, extra: Sequence, name: str | None = None) -> "PresentedRing":
        return PresentedRing(self.S, self.ideal_gens + [self.S(f) for f in extra], name=name)

    def hilbert_function(self, degrees) -> list[int]:
        return hilbert_function(self.gb, degrees)

    def length(self) -> int:
        return total_length(self.gb)

    def random_form(self, rng, degree: int, density: float = 0.7, bound: int = 3) -> Poly:
        for _ in range(50):
            p = self.reduce(self.S.random_homogeneous(rng, degree, density, bound))
            if not p.is_zero():
                return p
        return self.reduce(self.S.random_homogeneous(rng, degree, 1.0, bound))


class PresentedModule:
    """coker(relations) with generator degrees; relations is a homogeneous Matrix."""

    def __init__(self, ring: PresentedRing, degrees: Sequence[int], relations: Matrix | Sequence[dict] | None = None,
                 name: str | None = None, minimal: bool = False):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)
        S = ring.S
        if relations is None:
            cols = []
        elif isinstance(relations, Matrix):
            if relations.nrows != len(self.degrees):
                raise ValueError("relation matrix has the wrong number of rows")
            cols = relations.cols
        else:
            cols = list(relations)
        cols = [ring.reduce_vec(c) for c in cols]
        cols = [c for c in cols if c]
        self.col_degrees = tuple(vec_degree(S, c, self.degrees) for c in cols)
        self.relations = Matrix(S, len(self.degrees), len(cols), cols)
        self.name = name
        self._minimal = minimal

    # --- constructors
    @classmethod
    def free(cls, ring: PresentedRing, degrees: Sequence[int] | int) -> "PresentedModule":
        if isinstance(degrees, int):
            degrees = [0] * degrees
        return cls(ring, degrees, None, minimal=True)

    @classmethod
    def zero(cls, ring: PresentedRing) -> "PresentedModule":
        return cls(ring, [], None, minimal=True)

    @classmethod
    def cokernel(cls, ring: PresentedRing, matrix, degrees: Sequence[int] | None = None,
                 name: str | None = None) -> "PresentedModule":
        """coker of a matrix given as a Matrix or as rows of polynomials."""
        S = ring.S
        A = matrix if isinstance(matrix, Matrix) else Matrix.from_rows(S, [list(r) for r in matrix])
        if degrees is None:
            degrees = infer_row_degrees(A)
        return cls(ring, degrees, A, name=name)

    @classmethod
    def quotient(cls, ring: PresentedRing, ideal: Sequence, degree: int = 0,
                 name: str | None = None) -> "PresentedModule":
        S = ring.S
        cols = [{(0, e): c for e, c in S(f).terms.items()} for f in ideal]
        return cls(ring, [degree], cols, name=name)

    @classmethod
    def residue_field(cls, ring: PresentedRing) -> "PresentedModule":
        return cls.quotient(ring, ring.variables(), name="k")

    # --- data
    @property
    def ngens(self) -> int:
        return len(self.degrees)

    @property
    def nrels(self) -> int:
        return self.relations.ncols

    def rel_vectors(self) -> list[dict]:
        return self.relations.cols

    def is_free(self) -> bool:
        return self.minimize().nrels == 0

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"<{label}module with {self.ngens} generators, {self.nrels} relations over {self.ring!r}>"

    @cached_property
    def image(self) -> AugmentedBasis:
        """Groebner basis of the relation module plus I*R^g."""
        return AugmentedBasis(self.ring.S, self.relations.cols, self.degrees, self.col_degrees,
                              relations=self.ring.relations, track=False)

    def contains(self, v: dict) -> bool:
        """Is the vector v of R^g zero in the module?"""
        return self.image.contains(v)

    def is_zero(self) -> bool:
        z = self.ring.S.zero_exp
        one = self.ring.field.one
        return all(self.contains({(i, z): one}) for i in range(self.ngens))

    def hilbert_numerator(self) -> dict[int, int]:
        return hilbert_numerator(self.image)

    def hilbert_function(self, degrees) -> list[int]:
        return hilbert_function(self.image, degrees)

    @cached_property
    def dim(self) -> int:
        if self.ngens == 0:
            return -1
        leads = self.image.lead_exponents()
        return max(dim_of_monomial_quotient(leads[k], self.ring.n) for k in range(self.ngens))

    def length(self) -> int:
        return total_length(self.image) if self.ngens else 0

    # --- minimalization
    def minimize(self) -> "PresentedModule":
        """An isomorphic module with a minimal presentation."""
        if self._minimal:
            return self
        degrees, cols = prune_units(self.ring, list(self.degrees), [dict(c) for c in self.relations.cols])
        S = self.ring.S
        while True:
            mins, _ = minimal_generators(S, cols, degrees, self.ring.relations)
            mins = [self.ring.reduce_vec(v) for v in mins]
            d2, c2 = prune_units(self.ring, degrees, mins)
            if len(d2) == len(degrees):
                degrees, cols = d2, c2
                break
            degrees, cols = d2, c2
        out = PresentedModule(self.ring, degrees, cols, name=self.name, minimal=True)
        return out

    @property
    def mu(self) -> int:
        """Minimal number of generators."""
        return self.minimize().ngens

    # --- constructions
    def twist(self, s: int) -> "PresentedModule":
        """M(s): degrees lowered by s."""
        return PresentedModule(self.ring, [d - s for d in self.degrees], self.relations.cols,
                               name=self.name, minimal=self._minimal)

    def direct_sum(self, *others: "PresentedModule") -> "PresentedModule":
        degrees = list(self.degrees)
        cols = list(self.relations.cols)
        for o in others:
            off = len(degrees)
            degrees.extend(o.degrees)
            cols.extend(vec_shift_components(c, off) for c in o.relations.cols)
        return PresentedModule(self.ring, degrees, cols)

    def tensor(self, other: "PresentedModule") -> "PresentedModule":
        S = self.ring.S
        g, h = self.ngens, other.ngens
        A, B = self.relations, other.relations
        left = kron(A, Matrix.identity(S, h))
        right = kron(Matrix.identity(S, g), B)
        degrees = [a + b for a in self.degrees for b in other.degrees]
        return PresentedModule(self.ring, degrees, left.cols + right.cols)

    def base_change(self, ring: "PresentedRing") -> "PresentedModule":
        """The same presentation read over another quotient of S (e.g. R/x)."""
        return PresentedModule(ring, self.degrees, self.relations.cols, name=self.name)

    def matrix(self) -> Matrix:
        return self.relations


def infer_row_degrees(A: Matrix) -> list[int]:
    """Generator degrees making A homogeneous, with the first generator in degree 0
    in each connected block; raises ValueError if impossible."""
    S = A.ring
    n = A.nrows
    deg: list[int | None] = [None] * n
    parts = [vec_components(c) for c in A.cols]
    edges = []
    for j, p in enumerate(parts):
        items = []
        for i, poly in p.items():
            ds = {S.exp_degree(e) for e in poly}
            if len(ds) != 1:
                raise ValueError(f"entry ({i},{j}) is not homogeneous")
            items.append((i, ds.pop()))
        edges.append(items)
    changed = True
    for start in range(n):
        if deg[start] is not None:
            continue
        deg[start] = 0
        changed = True
        while changed:
            changed = False
            for items in edges:
                known = [(i, d) for i, d in items if deg[i] is not None]
                if not known:
                    continue
                i0, d0 = known[0]
                col = deg[i0] + d0
                for i, d in items:
                    want = col - d
                    if deg[i] is None:
                        deg[i] = want
                        changed = True
                    elif deg[i] != want:
                        raise ValueError("matrix is not homogeneous for any choice of generator degrees")
    return [int(d) for d in deg]


def prune_units(ring: PresentedRing, degrees: list[int], cols: list[dict]) -> tuple[list[int], list[dict]]:
    """Eliminate generators that a relation expresses with a unit coefficient."""
    S = ring.S
    F = S.field
    z = S.zero_exp
    degrees = list(degrees)
    cols = [c for c in cols if c]
    while True:
        hit = None
        for j, c in enumerate(cols):
            for (i, e), x in c.items():
                if e == z:
                    hit = (i, j, x)
                    break
            if hit:
                break
        if hit is None:
            return degrees, cols
        i, j, unit = hit
        pivot = cols[j]
        inv = F.inv(unit)
        new_cols = []
        for l, c in enumerate(cols):
            if l == j:
                continue
            coef = {e: x for (r, e), x in c.items() if r == i}
            if coef:
                scaled = {e: F.neg(F.mul(x, inv)) for e, x in coef.items()}
                c = vec_add(F, c, poly_times_vec(F, scaled, pivot))
            # drop row i and renumber
            c = {((r - 1 if r > i else r), e): x for (r, e), x in c.items() if r != i}
            c = ring.reduce_vec(c)
            if c:
                new_cols.append(c)
        cols = new_cols
        del degrees[i]


# --- subquotients and homology

def subquotient(ring: PresentedRing, gens: Sequence[dict], rels: Sequence[dict],
                shifts: Sequence[int]) -> PresentedModule:
    """(span(gens) + span(rels)) / span(rels) inside R^len(shifts)."""
    S = ring.S
    mins, _ = minimal_generators(S, [g for g in gens if g], shifts, ring.relations, preloaded=rels)
    if not mins:
        return PresentedModule.zero(ring)
    degs = [vec_degree(S, v, shifts) for v in mins]
    AB = AugmentedBasis(S, mins, shifts, degs, relations=ring.relations, target_relations=rels)
    ker = AB.kernel_vectors()
    P = minimal_generators(S, ker, degs, ring.relations)[0]
    return PresentedModule(ring, degs, P).minimize()


def kernel_vectors(ring: PresentedRing, d: Matrix, src_degrees: Sequence[int],
                   tgt: "PresentedModule") -> list[dict]:
    """Generators of {u in R^src : d u = 0 in tgt}."""
    if d.ncols == 0:
        return []
    if tgt.ngens == 0 or d.is_zero():
        z = ring.S.zero_exp
        return [{(j, z): ring.field.one} for j in range(d.ncols)]
    AB = AugmentedBasis(ring.S, d.cols, tgt.degrees, src_degrees, relations=ring.relations,
                        target_relations=tgt.relations.cols)
    return AB.kernel_vectors()


def homology_module(ring: PresentedRing, src: PresentedModule, d_out: Matrix | None,
                    tgt: PresentedModule | None, d_in: Matrix | None) -> PresentedModule:
    """ker(d_out: src -> tgt) / im(d_in) as a presented module."""
    z = ring.S.zero_exp
    if d_out is None or tgt is None:
        K = [{(j, z): ring.field.one} for j in range(src.ngens)]
    else:
        K = kernel_vectors(ring, d_out, src.degrees, tgt)
    B = list(src.relations.cols) + (list(d_in.cols) if d_in is not None else [])
    return subquotient(ring, K, B, src.degrees)


def homology_is_zero(ring: PresentedRing, src: PresentedModule, d_out: Matrix | None,
                     tgt: PresentedModule | None, d_in: Matrix | None) -> bool:
    z = ring.S.zero_exp
    if src.ngens == 0:
        return True
    if d_out is None or tgt is None:
        K = [{(j, z): ring.field.one} for j in range(src.ngens)]
    else:
        K = kernel_vectors(ring, d_out, src.degrees, tgt)
    if not K:
        return True
    B = list(src.relations.cols) + (list(d_in.cols) if d_in is not None else [])
    B = [b for b in B if b]
    if not B:
        return all(not ring.reduce_vec(k) for k in K)
    AB = AugmentedBasis(ring.S, B, src.degrees, relations=ring.relations, track=False)
    return all(AB.contains(k) for k in K)


def hom(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """Hom_R(M, N) as a presented module."""
    ring = M.ring
    S = ring.S
    Mm = M.minimize()
    g, h = Mm.ngens, N.ngens
    if g == 0 or h == 0:
        return PresentedModule.zero(ring)
    src_deg = [d - a for a in Mm.degrees for d in N.degrees]
    src = PresentedModule(ring, src_deg, kron(Matrix.identity(S, g), N.relations).cols)
    if Mm.nrels == 0:
        return src.minimize()
    tgt_deg = [d - c for c in Mm.col_degrees for d in N.degrees]
    tgt = PresentedModule(ring, tgt_deg, kron(Matrix.identity(S, Mm.nrels), N.relations).cols)
    phi = kron(Mm.relations.transpose(), Matrix.identity(S, h))
    return homology_module(ring, src, phi, tgt, None)


def free_dual(ring: PresentedRing, A: Matrix) -> Matrix:
    return A.transpose()


def same_module_invariants(M: PresentedModule, N: PresentedModule) -> bool:
    """Cheap isomorphism invariants: Hilbert series and minimal generator count."""
    Mm, Nm = M.minimize(), N.minimize()
    if Mm.ngens != Nm.ngens or sorted(Mm.degrees) != sorted(Nm.degrees):
        return False
    return Mm.hilbert_numerator() == Nm.hilbert_numerator()


def scalar_vec(ring: PresentedRing, i: int) -> dict:
    return {(i, ring.S.zero_exp): ring.field.one}


def vec_sub(F, a: dict, b: dict) -> dict:
    return vec_add(F, a, vec_neg(F, b))


def relation_vectors_for(ring: PresentedRing, rank: int) -> list[dict]:
    return relation_vectors(ring.relations, range(rank))
