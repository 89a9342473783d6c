"""High-level Groebner operations: bases, normal forms, syzygies, kernels,
colons, annihilators, dimension, Hilbert functions and radical membership.

Quotient rings S/I enter as ``relations``: the reduced Groebner basis of I
given as a list of term dicts.  Computations modulo I append h*e_j for every
relation h and every component j, registered first so they stay untouched.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .engine import GBEngine
from .matrix import Matrix, poly_times_vec, vec_components, vec_restrict, vec_shift_components
from .poly import MonomialOrder, Poly, PolyRing


class NotHomogeneousError(ValueError):
    pass


class PolyVector:
    """Element of a graded free module S^rank (component shifts optional)."""

    __slots__ = ("ring", "rank", "terms", "shifts")

    def __init__(self, ring: PolyRing, rank: int, terms: dict, shifts: Sequence[int] | None = None):
        self.ring = ring
        self.rank = rank
        self.terms = terms
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank

    @classmethod
    def from_polys(cls, ring: PolyRing, entries: Sequence, shifts=None) -> "PolyVector":
        terms = {}
        for i, p in enumerate(entries):
            for e, c in ring(p).terms.items():
                terms[(i, e)] = c
        return cls(ring, len(entries), terms, shifts)

    def components(self) -> list[Poly]:
        parts = vec_components(self.terms)
        return [Poly(self.ring, parts.get(i, {})) for i in range(self.rank)]

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        degs = {self.ring.exp_degree(e) + self.shifts[c] for c, e in self.terms}
        if len(degs) != 1:
            raise NotHomogeneousError("vector is zero or not homogeneous")
        return degs.pop()

    def __eq__(self, other):
        return isinstance(other, PolyVector) and self.rank == other.rank and self.terms == other.terms

    def __repr__(self):
        return "(" + ", ".join(repr(p) for p in self.components()) + ")"


def to_terms(x) -> dict:
    if isinstance(x, Poly):
        return {(0, e): c for e, c in x.terms.items()}
    if isinstance(x, PolyVector):
        return x.terms
    if isinstance(x, dict):
        return x
    raise TypeError(f"expected a polynomial or vector, got {type(x).__name__}")


def relation_vectors(relations: Sequence[dict], comps: Iterable[int]) -> list[dict]:
    return [{(k, e): c for e, c in h.items()} for k in comps for h in relations]


def vec_degree(ring: PolyRing, v: dict, shifts: Sequence[int]) -> int:
    w = ring.degrees
    degs = {sum(a * b for a, b in zip(w, e)) + shifts[c] for c, e in v}
    if len(degs) != 1:
        raise NotHomogeneousError("input vector is not homogeneous")
    return degs.pop()


def feed(E: GBEngine, gens: Sequence[dict], degree_of) -> None:
    """Add generators in increasing degree, finishing lower-degree pairs first."""
    order = sorted(range(len(gens)), key=lambda i: degree_of(gens[i]))
    for i in order:
        g = gens[i]
        if not g:
            continue
        E.run(max_sugar=degree_of(g))
        E.add(g)
    E.run()


class GroebnerBasis:
    """A reduced Groebner basis of a submodule of S^rank."""

    def __init__(self, ring: PolyRing, rank: int, shifts: Sequence[int], engine: GBEngine):
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts)
        self.order = engine.order
        self.engine = engine
        self.vectors = engine.reduced_basis()
        self.leads = [engine.lead(v) for v in self.vectors]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.elements())

    def elements(self):
        if self.rank == 1:
            return [Poly(self.ring, {e: c for (_, e), c in v.items()}) for v in self.vectors]
        return [PolyVector(self.ring, self.rank, v, self.shifts) for v in self.vectors]

    def reduce_terms(self, v: dict) -> dict:
        return self.engine.reduce(v)[0]

    def reduce(self, f):
        r = self.reduce_terms(to_terms(f))
        if isinstance(f, Poly):
            return Poly(self.ring, {e: c for (_, e), c in r.items()})
        return PolyVector(self.ring, self.rank, r, self.shifts)

    def contains(self, f) -> bool:
        return self.engine.contains(to_terms(f))

    def lead_exponents(self) -> dict[int, list[tuple]]:
        out: dict[int, list[tuple]] = {k: [] for k in range(self.rank)}
        for c, e in self.leads:
            out[c].append(e)
        return out

    def is_unit_ideal(self) -> bool:
        return any(e == self.ring.zero_exp for _, e in self.leads)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.vectors == other.vectors

    def __repr__(self):
        return f"GroebnerBasis({self.elements()})"


def buchberger(generators: Sequence, ring: PolyRing | None = None, rank: int | None = None,
               shifts: Sequence[int] | None = None, order: MonomialOrder | None = None,
               relations: Sequence[dict] = (), homogeneous: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by `generators`.

    Generators are Polys (rank 1) or PolyVectors.  With ``homogeneous`` set,
    inhomogeneous input raises NotHomogeneousError.
    """
    gens = list(generators)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    if rank is None:
        rank = gens[0].rank if gens and isinstance(gens[0], PolyVector) else 1
    if shifts is None:
        shifts = gens[0].shifts if gens and isinstance(gens[0], PolyVector) else (0,) * rank
    for g in gens:
        if isinstance(g, dict):
            continue
        g_rank = g.rank if isinstance(g, PolyVector) else 1
        if g_rank != rank:
            raise ValueError(f"generator of rank {g_rank} in a free module of rank {rank}")
        if getattr(g, "ring", ring).field != ring.field:
            raise ValueError("generators over different fields")
    vecs = [to_terms(g) for g in gens]
    vecs = [v for v in vecs if v]
    if homogeneous:
        for v in vecs:
            vec_degree(ring, v, shifts)
    E = GBEngine(ring, shifts, order)
    E.add_many(relation_vectors(relations, range(rank)), scalar=True)
    feed(E, vecs, E.vec_sugar)
    return GroebnerBasis(ring, rank, shifts, E)


def normal_form(f, G: GroebnerBasis):
    return G.reduce(f)


def ideal_basis(ring: PolyRing, gens: Sequence[Poly]) -> list[dict]:
    """Reduced Groebner basis of an ideal as term dicts (the `relations` format)."""
    G = buchberger([ring(g) for g in gens], ring=ring, rank=1, homogeneous=True)
    return [{e: c for (_, e), c in v.items()} for v in G.vectors]


class AugmentedBasis:
    """Groebner basis of {(a_j, e_j)} + {(t, 0)} + relations, POT with target first.

    From it one reads off the kernel of the map S^c -> S^r / (T + I S^r)
    given by the columns a_j, membership in the image, and lifts.
    """

    def __init__(self, ring: PolyRing, columns: Sequence[dict], target_shifts: Sequence[int],
                 col_shifts: Sequence[int] | None = None, relations: Sequence[dict] = (),
                 target_relations: Sequence[dict] = (), track: bool = True):
        self.ring = ring
        self.r = len(target_shifts)
        self.c = len(columns)
        self.track = track
        self.relations = relations
        if col_shifts is None:
            col_shifts = [vec_degree(ring, a, target_shifts) if a else 0 for a in columns]
        self.col_shifts = tuple(col_shifts)
        shifts = tuple(target_shifts) + (self.col_shifts if track else ())
        self.all_shifts = shifts
        self.shifts = tuple(target_shifts)
        self.rank = self.r
        E = GBEngine(ring, shifts, MonomialOrder(ring.order.base, "POT", ring.degrees))
        ncomp = len(shifts)
        E.add_many(relation_vectors(relations, range(ncomp)), scalar=True)
        gens = [dict(t) for t in target_relations if t]
        F = ring.field
        z = ring.zero_exp
        for j, a in enumerate(columns):
            g = dict(a)
            if track:
                g[(self.r + j, z)] = F.one
            if g:
                gens.append(g)
        for g in gens:
            vec_degree(ring, g, shifts)
        feed(E, gens, E.vec_sugar)
        self.engine = E

    def kernel_vectors(self) -> list[dict]:
        """Generators (not minimal) of the kernel, as vectors in S^c reduced mod I."""
        if not self.track:
            raise ValueError("kernel requires tracking")
        E = self.engine
        out = []
        for i in E.live_indices():
            comp = E.leads[i][0]
            if comp < self.r or E.scalar[i]:
                continue
            g = E.polys[i]
            lm = E.leads[i]
            tail = {m: x for m, x in g.items() if m != lm}
            red, _ = E.reduce(tail)
            red[lm] = g[lm]
            out.append(vec_restrict(red, self.r, self.r + self.c))
        return out

    def contains(self, v: dict) -> bool:
        """Is v (in the target) in the image plus relations?"""
        E = self.engine
        red, _ = E.reduce(v, full=False)
        if not red:
            return True
        return min(red, key=E.nkey)[0] >= self.r

    def lift(self, v: dict) -> dict | None:
        """Coefficient vector w in S^c with sum w_j a_j = v modulo relations, or None."""
        if not self.track:
            raise ValueError("lift requires tracking")
        E = self.engine
        red, _ = E.reduce(v)
        if any(c < self.r for c, _ in red):
            return None
        F = self.ring.field
        return {(c - self.r, e): F.neg(x) for (c, e), x in red.items()}

    def lead_exponents(self) -> dict[int, list[tuple]]:
        return self.image_leads()

    def image_leads(self) -> dict[int, list[tuple]]:
        E = self.engine
        out: dict[int, list[tuple]] = {k: [] for k in range(self.r)}
        for i in E.live_indices():
            c, e = E.leads[i]
            if c < self.r:
                out[c].append(e)
        return out


def minimal_generators(ring: PolyRing, gens: Sequence[dict], shifts: Sequence[int],
                       relations: Sequence[dict] = (), preloaded: Sequence[dict] = ()
                       ) -> tuple[list[dict], list[int]]:
    """Minimal homogeneous generators of span(gens) modulo span(preloaded) + I.

    Returns the reduced remainders and the indices of the generators kept.
    """
    E = GBEngine(ring, shifts, MonomialOrder(ring.order.base, "POT", ring.degrees))
    E.add_many(relation_vectors(relations, range(len(shifts))), scalar=True)
    items = []
    for v in preloaded:
        if v:
            items.append((vec_degree(ring, v, shifts), 0, -1, v))
    for i, v in enumerate(gens):
        if v:
            items.append((vec_degree(ring, v, shifts), 1, i, v))
    items.sort(key=lambda t: (t[0], t[1], t[2]))
    kept, idx = [], []
    for d, kind, i, v in items:
        E.run(max_sugar=d)
        r = E.add(v)
        if kind == 1 and r:
            kept.append(r)
            idx.append(i)
    return kept, idx


def syzygies(gens: Sequence[dict], ring: PolyRing, shifts: Sequence[int],
             relations: Sequence[dict] = (), minimal: bool = True) -> list[dict]:
    """Syzygies of the vectors gens (columns) over S/I, as vectors in S^len(gens)."""
    col_shifts = [vec_degree(ring, g, shifts) if g else 0 for g in gens]
    A = AugmentedBasis(ring, gens, shifts, col_shifts, relations=relations)
    ker = A.kernel_vectors()
    # zero generators contribute unit syzygies
    z = ring.zero_exp
    for j, g in enumerate(gens):
        if not g:
            ker.append({(j, z): ring.field.one})
    if not minimal:
        return ker
    return minimal_generators(ring, ker, col_shifts, relations)[0]


def kernel_of_map(A: Matrix, row_shifts: Sequence[int], col_shifts: Sequence[int] | None = None,
                  relations: Sequence[dict] = (), target_relations: Sequence[dict] = ()) -> Matrix:
    """Minimal generators of ker(A: R^c -> R^r / T) as the columns of a matrix."""
    if col_shifts is None:
        col_shifts = [A.column_degree(j, row_shifts) or 0 for j in range(A.ncols)]
    AB = AugmentedBasis(A.ring, A.cols, row_shifts, col_shifts, relations=relations,
                        target_relations=target_relations)
    ker = AB.kernel_vectors()
    mins = minimal_generators(A.ring, ker, col_shifts, relations)[0]
    return Matrix.from_columns(A.ring, A.ncols, mins)


def _ideal_terms(ring: PolyRing, gens) -> list[dict]:
    out = []
    for g in gens:
        if isinstance(g, dict):
            out.append(g)
        else:
            out.append(ring(g).terms)
    return [g for g in out if g]


def module_colon(ring: PolyRing, U: Sequence[dict], f: dict, shifts: Sequence[int],
                 relations: Sequence[dict] = ()) -> list[dict]:
    """Generators (term dicts) of the ideal (U : f) in S/I."""
    if not f:
        return [{ring.zero_exp: ring.field.one}]
    d = vec_degree(ring, f, shifts)
    A = AugmentedBasis(ring, [f], shifts, [d], relations=relations, target_relations=U)
    ker = A.kernel_vectors()
    mins = minimal_generators(ring, ker, [0], relations)[0]
    return [{e: c for (_, e), c in v.items()} for v in mins]


def intersect_ideals(ring: PolyRing, J: Sequence, K: Sequence, relations: Sequence[dict] = ()) -> list[dict]:
    z = ring.zero_exp
    one = ring.field.one
    tr = [{(0, e): c for e, c in g.items()} for g in _ideal_terms(ring, J)]
    tr += [{(1, e): c for e, c in g.items()} for g in _ideal_terms(ring, K)]
    A = AugmentedBasis(ring, [{(0, z): one, (1, z): one}], [0, 0], [0], relations=relations,
                       target_relations=tr)
    ker = A.kernel_vectors()
    mins = minimal_generators(ring, ker, [0], relations)[0]
    return [{e: c for (_, e), c in v.items()} for v in mins]


def colon(ring: PolyRing, I: Sequence, J: Sequence, relations: Sequence[dict] = ()) -> list[dict]:
    """(I : J) for ideals of S/I0 given by generators."""
    Iv = [{(0, e): c for e, c in g.items()} for g in _ideal_terms(ring, I)]
    result = None
    for g in _ideal_terms(ring, J):
        part = module_colon(ring, Iv, {(0, e): c for e, c in g.items()}, [0], relations)
        result = part if result is None else intersect_ideals(ring, result, part, relations)
    if result is None:
        return [{ring.zero_exp: ring.field.one}]
    return result


def annihilator(ring: PolyRing, U: Sequence[dict], shifts: Sequence[int],
                relations: Sequence[dict] = ()) -> list[dict]:
    """Ann(S^g / (U + I S^g)) as ideal generators."""
    g = len(shifts)
    if g == 0:
        return [{ring.zero_exp: ring.field.one}]
    z = ring.zero_exp
    one = ring.field.one
    target_shifts = []
    tr = []
    col = {}
    for b in range(g):
        target_shifts.extend(s - shifts[b] for s in shifts)
        tr.extend(vec_shift_components(u, b * g) for u in U if u)
        col[(b * g + b, z)] = one
    A = AugmentedBasis(ring, [col], target_shifts, [0], relations=relations, target_relations=tr)
    ker = A.kernel_vectors()
    mins = minimal_generators(ring, ker, [0], relations)[0]
    return [{e: c for (_, e), c in v.items()} for v in mins]


def colon_and_ann(ring: PolyRing, I: Sequence, J: Sequence, module_relations: Sequence[dict] | None = None,
                  shifts: Sequence[int] | None = None, relations: Sequence[dict] = ()):
    """Return (I : J) and, if a module presentation is given, its annihilator."""
    col = colon(ring, I, J, relations)
    ann = None
    if module_relations is not None:
        ann = annihilator(ring, module_relations, shifts, relations)
    return col, ann


# --- dimension and Hilbert functions from initial modules

def dim_of_monomial_quotient(leads: Sequence[tuple], n: int) -> int:
    """Krull dimension of S/(leads) via maximal independent sets of variables."""
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in leads]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for V in combinations(range(n), size):
            Vs = set(V)
            if not any(s <= Vs for s in supports):
                return size
    return -1


def krull_dim(G: GroebnerBasis) -> int:
    """dim S^r/U from the lead terms of a Groebner basis; -1 for the zero module."""
    leads = G.lead_exponents()
    return max(dim_of_monomial_quotient(leads[k], G.ring.n) for k in range(G.rank))


def is_zero_module(G: GroebnerBasis) -> bool:
    z = G.ring.zero_exp
    leads = G.lead_exponents()
    return all(z in leads[k] for k in range(G.rank))


def _standard_count(ring: PolyRing, leads: Sequence[tuple], d: int) -> int:
    if d < 0:
        return 0
    cnt = 0
    for e in ring.monomials_of_degree(d):
        if not any(all(a <= b for a, b in zip(m, e)) for m in leads):
            cnt += 1
    return cnt


def hilbert_function(G: GroebnerBasis, degrees: Iterable[int]) -> list[int]:
    """Values of the Hilbert function of S^r/U at the given degrees."""
    leads = G.lead_exponents()
    out = []
    for d in degrees:
        out.append(sum(_standard_count(G.ring, leads[k], d - G.shifts[k]) for k in range(G.rank)))
    return out


def total_length(G: GroebnerBasis) -> int:
    """Vector-space dimension of a finite-length S^r/U."""
    if krull_dim(G) > 0:
        raise ValueError("module does not have finite length")
    leads = G.lead_exponents()
    total = 0
    maxw = max(G.ring.degrees) if G.ring.n else 1
    for k in range(G.rank):
        run = 0
        d = 0
        while run < maxw:
            c = _standard_count(G.ring, leads[k], d)
            total += c
            run = run + 1 if c == 0 else 0
            d += 1
    return total


def hilbert_numerator(G: GroebnerBasis) -> dict[int, int]:
    """Numerator N(t) with HS = N(t) / prod(1 - t^w_i), as {degree: coeff}."""
    w = G.ring.degrees
    leads = G.lead_exponents()
    total: dict[int, int] = {}
    for k in range(G.rank):
        for d, c in _monomial_numerator(tuple(_minimalize(leads[k])), w).items():
            key = d + G.shifts[k]
            total[key] = total.get(key, 0) + c
    return {d: c for d, c in sorted(total.items()) if c}


def _minimalize(gens: Sequence[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(m, g)) for m in out):
            out.append(g)
    return sorted(out)


@lru_cache(maxsize=None)
def _monomial_numerator(gens: tuple, w: tuple) -> dict[int, int]:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    *rest, m = gens
    rest = tuple(_minimalize(rest))
    a = _monomial_numerator(rest, w)
    quot = tuple(_minimalize([tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest]))
    b = _monomial_numerator(quot, w)
    dm = sum(x * y for x, y in zip(m, w))
    out = dict(a)
    for d, c in b.items():
        out[d + dm] = out.get(d + dm, 0) - c
    return {d: c for d, c in out.items() if c}


def radical_membership(f: Poly, ideal_gens: Sequence[Poly]) -> bool:
    """Is f in the radical of the ideal?  Decided by the Rabinowitsch trick."""
    S = f.ring
    if f.is_zero():
        return True
    name = "_rab"
    while name in S.names:
        name += "_"
    T = PolyRing(S.field, S.names + (name,), S.degrees + (1,), S.order.base)

    def up(p: Poly) -> Poly:
        return Poly(T, {e + (0,): c for e, c in p.terms.items()})

    y = T.gens()[-1]
    gens = [up(S(g)) for g in ideal_gens] + [T.one() - y * up(f)]
    G = buchberger(gens, ring=T, rank=1)
    return G.is_unit_ideal()


def lift_through(A: Matrix, v: dict, row_shifts: Sequence[int], relations: Sequence[dict] = ()) -> dict | None:
    """Solve A w = v modulo relations; returns w as a vector or None."""
    AB = AugmentedBasis(A.ring, A.cols, row_shifts, relations=relations)
    return AB.lift(v)


def check_lift(A: Matrix, w: dict, v: dict, ring_reduce) -> bool:
    F = A.ring.field
    acc: dict = {}
    from .matrix import vec_add, vec_neg
    for k, p in vec_components(w).items():
        acc = vec_add(F, acc, poly_times_vec(F, p, A.cols[k]))
    return not ring_reduce(vec_add(F, acc, vec_neg(F, v)))
