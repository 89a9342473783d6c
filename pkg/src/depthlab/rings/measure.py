"""Depth and dimension of modules, regular sequences, and the module
constructions that change a module without changing its depth: the tilde
cut-down, the pushforward along a nonzerodivisor, the non-free locus and
constant rank via Fitting ideals."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from ..grobner.matrix import Matrix, kron, vec_shift_components
from ..grobner.ops import colon, radical_membership
from ..grobner.poly import Poly, padd, pmul
from .core import PresentedModule, PresentedRing, homology_is_zero, homology_module, kernel_vectors
from .functors import ext_module
from .resolution import min_free_resolution, syzygy

INF = math.inf


class RegularSequenceError(ValueError):
    pass


# --- Koszul complexes on a module

def koszul_matrices(R: PresentedRing, elems: Sequence[Poly]) -> tuple[list[list[tuple]], list[list[int]], list[Matrix]]:
    """Bases, degrees and differentials of K(elems; R).

    ``bases[i]`` lists the i-subsets, ``degrees[i]`` their degrees and
    ``mats[i]`` is d_i: K_i -> K_{i-1} (``mats[0]`` is a 0 x 1 placeholder).
    """
    S = R.S
    n = len(elems)
    elems = [S(f) for f in elems]
    edeg = [f.degree() for f in elems]
    bases = [list(combinations(range(n), i)) for i in range(n + 1)]
    degrees = [[sum(edeg[t] for t in T) for T in B] for B in bases]
    mats = [Matrix.zero(S, 0, 1)]
    F = S.field
    for i in range(1, n + 1):
        index = {T: k for k, T in enumerate(bases[i - 1])}
        cols = []
        for T in bases[i]:
            col: dict = {}
            for pos, t in enumerate(T):
                rest = T[:pos] + T[pos + 1:]
                c = index[rest]
                sign = F.one if pos % 2 == 0 else F.neg(F.one)
                for e, x in elems[t].terms.items():
                    key = (c, e)
                    v = F.add(col.get(key, F.zero), F.mul(sign, x))
                    if v:
                        col[key] = v
                    else:
                        col.pop(key, None)
            cols.append(col)
        mats.append(Matrix(S, len(bases[i - 1]), len(bases[i]), cols))
    return bases, degrees, mats


def _koszul_term(M: PresentedModule, degrees: list[int]) -> PresentedModule:
    S = M.ring.S
    degs = [a + b for a in degrees for b in M.degrees]
    return PresentedModule(M.ring, degs, kron(Matrix.identity(S, len(degrees)), M.relations).cols)


def koszul_pieces(M: PresentedModule, elems: Sequence[Poly], i: int, data=None):
    """(src, d_out, tgt, d_in) for H_i(K(elems) (x) M)."""
    S = M.ring.S
    _, degrees, mats = data if data is not None else koszul_matrices(M.ring, elems)
    n = len(degrees) - 1
    g = M.ngens
    src = _koszul_term(M, degrees[i])
    if i >= 1:
        tgt = _koszul_term(M, degrees[i - 1])
        d_out = kron(mats[i], Matrix.identity(S, g))
    else:
        tgt = d_out = None
    d_in = kron(mats[i + 1], Matrix.identity(S, g)) if i < n else None
    return src, d_out, tgt, d_in


def koszul_homology(M: PresentedModule, elems: Sequence[Poly], i: int) -> PresentedModule:
    return homology_module(M.ring, *koszul_pieces(M, elems, i))


def koszul_homology_vanishes(M: PresentedModule, elems: Sequence[Poly], i: int, data=None) -> bool:
    return homology_is_zero(M.ring, *koszul_pieces(M, elems, i, data))


def koszul_depth(M: PresentedModule, elems: Sequence[Poly] | None = None) -> float:
    """n - sup{i : H_i(K(elems; M)) != 0}, scanning from the top; +inf for M = 0.

    With elems the variables this is depth M.
    """
    Mm = M.minimize()
    R = M.ring
    if Mm.ngens == 0:
        return INF
    if elems is None:
        elems = R.variables()
    n = len(elems)
    data = koszul_matrices(R, elems)
    for i in range(n, 0, -1):
        if not koszul_homology_vanishes(Mm, elems, i, data):
            return n - i
    return n


@dataclass(frozen=True)
class Measure:
    depth: float
    dim: int
    codepth: float
    is_cm: bool
    is_mcm: bool

    def as_dict(self) -> dict:
        def fmt(x):
            if x == INF:
                return "inf"
            if x == -INF:
                return "-inf"
            return int(x)
        return {"depth": fmt(self.depth), "dim": self.dim, "codepth": fmt(self.codepth),
                "is_CM": self.is_cm, "is_MCM": self.is_mcm}


def measure(M: PresentedModule) -> Measure:
    """Depth (Koszul), dimension (support), codepth = depth R - depth M."""
    R = M.ring
    Mm = M.minimize()
    depth = koszul_depth(Mm)
    if depth == INF:
        return Measure(INF, -1, -INF, False, False)
    dim = Mm.dim
    if Mm.is_free():
        depth_R = depth
    else:
        depth_R = R.depth
    return Measure(depth, dim, depth_R - depth, depth == dim, depth == R.dim)


def depth(M: PresentedModule) -> float:
    return koszul_depth(M)


def codepth(M: PresentedModule) -> float:
    return measure(M).codepth


# --- nonzerodivisors and regular sequences

def is_nzd(M: PresentedModule, x) -> bool:
    """Is multiplication by x injective on M?"""
    R = M.ring
    S = R.S
    x = R.reduce(S(x))
    if M.ngens == 0:
        return True
    if x.is_zero():
        return M.is_zero()
    dx = x.degree()
    cols = [{(j, e): c for e, c in x.terms.items()} for j in range(M.ngens)]
    d = Matrix(S, M.ngens, M.ngens, cols)
    K = kernel_vectors(R, d, [a + dx for a in M.degrees], M)
    return all(M.contains(k) for k in K)


def annihilator_of_element(R: PresentedRing, x) -> list[Poly]:
    """Generators of (0 : x) in R; empty means x is a nonzerodivisor."""
    S = R.S
    x = R.reduce(S(x))
    if x.is_zero():
        return [S.one()]
    gens = colon(S, [], [x.terms], R.relations)
    out = [R.reduce(Poly(S, g)) for g in gens]
    return [g for g in out if not g.is_zero()]


def quotient_module(M: PresentedModule, elems: Sequence) -> PresentedModule:
    """M / (elems) M."""
    S = M.ring.S
    cols = list(M.relations.cols)
    for f in elems:
        f = S(f)
        for j in range(M.ngens):
            cols.append({(j, e): c for e, c in f.terms.items()})
    return PresentedModule(M.ring, M.degrees, cols)


def _candidate_forms(R: PresentedRing, degree: int, rng: random.Random, attempts: int):
    """Monomials, then the sum of all monomials, then small random combinations."""
    S = R.S
    F = S.field
    monos = sorted(S.monomials_of_degree(degree), reverse=True)
    if not monos:
        return
    seen = set()

    def emit(terms):
        p = Poly(S, {e: c for e, c in terms.items() if c})
        if p.is_zero():
            return None
        key = tuple(sorted(p.monic().terms.items(), key=lambda t: t[0]))
        key = tuple((e, repr(c)) for e, c in key)
        if key in seen:
            return None
        seen.add(key)
        return p

    for m in monos:
        p = emit({m: F.one})
        if p is not None:
            yield p
    if len(monos) > 1:
        p = emit({m: F.one for m in monos})
        if p is not None:
            yield p
        for _ in range(attempts):
            p = emit({m: F.coerce(rng.randint(-3, 3)) for m in monos})
            if p is not None:
                yield p


def _candidate_degrees(R: PresentedRing) -> list[int]:
    degs = sorted(set(R.S.degrees))
    top = 2 * max(degs) if degs else 0
    out = [d for d in range(1, top + 1) if R.S.monomials_of_degree(d)]
    return out


def regular_sequence(R: PresentedRing, length: int, seed: int = 0, module: PresentedModule | None = None,
                     attempts: int = 200) -> list[Poly]:
    """A homogeneous regular sequence of the given length on R (or on a module).

    Low degrees are tried first; every element is certified by a zero colon
    (0 :_M x) modulo its predecessors.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    rng = random.Random(seed)
    seq: list[Poly] = []
    current = module if module is not None else PresentedModule.free(R, [0])
    degrees = _candidate_degrees(R)
    for step in range(length):
        found = None
        for d in degrees:
            for cand in _candidate_forms(R, d, rng, attempts):
                if quotient_module(current, [cand]).is_zero():
                    continue
                if is_nzd(current, cand):
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            raise RegularSequenceError(
                f"no regular element found at step {step + 1} of {length}; "
                "the sequence may be longer than the depth, or the field too small "
                "(use a larger prime or allow higher-degree forms)")
        seq.append(found)
        current = quotient_module(current, [found])
    return seq


def is_regular_sequence(M: PresentedModule, elems: Sequence) -> bool:
    current = M
    for f in elems:
        if not is_nzd(current, f):
            return False
        current = quotient_module(current, [f])
    return not current.is_zero() or len(elems) == 0


def depth_by_sequences(M: PresentedModule, seed: int = 0) -> float:
    """Depth as the length of a maximal M-regular sequence, extended until the
    residue field embeds (socle test: H_n of the Koszul complex)."""
    R = M.ring
    current = M.minimize()
    if current.ngens == 0:
        return INF
    length = 0
    while True:
        if not koszul_homology_vanishes(current, R.variables(), R.n):
            return length
        x = regular_sequence(R, 1, seed=seed + length, module=current)[0]
        current = quotient_module(current, [x]).minimize()
        length += 1


# --- constructions

def cut_down_tilde(M: PresentedModule, xs: Sequence | None = None, seed: int = 0) -> PresentedModule:
    """Omega^d(M / x M) for a maximal R-regular sequence x of length d."""
    R = M.ring
    if xs is None:
        xs = regular_sequence(R, int(R.depth), seed=seed)
    xs = [R.S(f) for f in xs]
    if not is_regular_sequence(PresentedModule.free(R, [0]), xs):
        raise RegularSequenceError("the given sequence is not regular on the ring")
    if not xs:
        return M.minimize()
    return syzygy(quotient_module(M, xs), len(xs))


def pushforward(M: PresentedModule, x) -> PresentedModule:
    """L = (F_0 (+) Omega^1 M) / {(iota z, -x z)}, the pushout of
    Omega^1 M -> F_0 along multiplication by x."""
    R = M.ring
    S = R.S
    x = R.reduce(S(x))
    if x.is_zero() or x.degree() <= 0 or annihilator_of_element(R, x):
        raise ValueError("pushforward needs a nonzerodivisor of positive degree")
    res = min_free_resolution(M, 2)
    Mm = res.module
    if Mm.nrels == 0:
        return Mm
    g, r = res.rank(0), res.rank(1)
    dx = x.degree()
    A, B = res.d(1), res.d(2)
    F = S.field
    cols = []
    for j in range(r):
        col = dict(A.cols[j])
        for e, c in x.terms.items():
            col[(g + j, e)] = F.neg(c)
        cols.append(col)
    for col in B.cols:
        cols.append(vec_shift_components(col, g))
    degrees = list(res.degrees[0]) + [d - dx for d in res.degrees[1]]
    return PresentedModule(R, degrees, cols).minimize()


def nonfree_locus_ideal(M: PresentedModule) -> list[Poly]:
    """Ann Ext^1(M, Omega^1 M), whose zero set is the non-free locus."""
    from ..grobner.ops import annihilator
    R = M.ring
    S = R.S
    Mm = M.minimize()
    if Mm.nrels == 0:
        return [S.one()]
    E = ext_module(Mm, syzygy(Mm, 1), 1)
    if E.ngens == 0:
        return [S.one()]
    gens = annihilator(S, E.relations.cols, E.degrees, R.relations)
    return [Poly(S, g) for g in gens]


def nonfree_locus_dim(M: PresentedModule) -> int:
    """dim V(Ann Ext^1(M, Omega^1 M)); -1 exactly when M is free."""
    Mm = M.minimize()
    if Mm.nrels == 0:
        return -1
    E = ext_module(Mm, syzygy(Mm, 1), 1)
    return E.dim if E.ngens else -1


def _det(S, rows: list[list[dict]]) -> dict:
    """Determinant of a square matrix of term dicts by cofactor expansion with memo."""
    F = S.field
    n = len(rows)
    memo: dict = {}

    def rec(i: int, cols: tuple) -> dict:
        if i == n:
            return {S.zero_exp: F.one}
        if (i, cols) in memo:
            return memo[(i, cols)]
        out: dict = {}
        for pos, c in enumerate(cols):
            a = rows[i][c]
            if not a:
                continue
            sub = rec(i + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = pmul(F, a, sub)
            if pos % 2:
                term = {e: F.neg(v) for e, v in term.items()}
            out = padd(F, out, term)
        memo[(i, cols)] = out
        return out

    return rec(0, tuple(range(n)))


def fitting_ideal(M: PresentedModule, j: int) -> list[Poly]:
    """Fitt_j(M): the (g - j)-minors of a presentation matrix (g x r)."""
    R = M.ring
    S = R.S
    Mm = M.minimize()
    g, r = Mm.ngens, Mm.nrels
    size = g - j
    if size <= 0:
        return [S.one()]
    if size > r:
        return []
    A = Mm.relations
    entries = [[A.entry(i, k).terms for k in range(r)] for i in range(g)]
    out = []
    for rs in combinations(range(g), size):
        for cs in combinations(range(r), size):
            d = _det(S, [[entries[i][k] for k in cs] for i in rs])
            if d:
                p = R.reduce(Poly(S, d))
                if not p.is_zero():
                    out.append(p)
    return out


def _quotient_dim(R: PresentedRing, gens: Sequence[Poly]) -> int:
    return PresentedModule.quotient(R, list(gens)).dim


def constant_rank(M: PresentedModule) -> int | None:
    """The r with M_p free of rank r at every minimal prime p, if it exists.

    Fitt_r(M) must avoid every minimal prime (dim R/Fitt_r < d) and
    Fitt_{r-1}(M) must vanish at every minimal prime (dim R/(0 : Fitt_{r-1}) < d).
    """
    R = M.ring
    S = R.S
    d = R.dim
    Mm = M.minimize()
    g = Mm.ngens
    for r in range(g + 1):
        fr = fitting_ideal(Mm, r)
        if _quotient_dim(R, fr) >= d:
            continue
        if r == 0:
            return 0
        prev = fitting_ideal(Mm, r - 1)
        if not prev:
            return r
        if not all(radical_membership(f, [S(h) for h in R.ideal_gens]) for f in prev):
            return None
        ann = colon(S, [], [f.terms for f in prev], R.relations)
        if _quotient_dim(R, [Poly(S, a) for a in ann]) < d:
            return r
        return None
    return None
