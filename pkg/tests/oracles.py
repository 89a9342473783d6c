"""Independent reference computations used to cross-check the library.

Nothing here calls the Groebner engine, the module code or the resolution
code: everything is dense linear algebra over the field (using only the raw
field arithmetic) or naive textbook algorithms on plain dictionaries.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement


# --- dense linear algebra over a field object

def rref(rows, F):
    """Row-reduce a list of rows (lists of raw field values); returns (rows, pivots)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if not F.is_zero(A[i][c])), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, v) for v in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows, F) -> int:
    return len(rref(rows, F)[1]) if rows else 0


def kernel(rows, ncols, F):
    """Basis of {v : A v = 0} for A given by its rows."""
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, F)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, p in zip(R, piv):
            v[p] = F.neg(row[f])
        out.append(v)
    return out


class _Q:
    """Fraction arithmetic with the field-object interface used above."""
    zero, one = Fraction(0), Fraction(1)
    is_zero = staticmethod(lambda a: a == 0)
    inv = staticmethod(lambda a: 1 / Fraction(a))
    mul = staticmethod(lambda a, b: a * b)
    sub = staticmethod(lambda a, b: a - b)
    add = staticmethod(lambda a, b: a + b)
    neg = staticmethod(lambda a: -a)


QQ = _Q()


def brute_rank_kernel(matrix):
    """Rank and kernel of a rational matrix by plain Gaussian elimination."""
    rows = [[Fraction(v) for v in r] for r in matrix]
    n = len(rows[0])
    return rank(rows, QQ), kernel(rows, n, QQ)


# --- naive Buchberger over Q with grevlex, on {exponent: Fraction} dicts

def _grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def _lead(p):
    return max(p, key=_grevlex_key)


def _sub_scaled(p, q, c, m):
    """p - c * x^m * q."""
    out = dict(p)
    for e, v in q.items():
        e2 = tuple(a + b for a, b in zip(e, m))
        out[e2] = out.get(e2, 0) - c * v
        if out[e2] == 0:
            del out[e2]
    return out


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def reduce_full(p, G):
    p = dict(p)
    r = {}
    while p:
        e = _lead(p)
        for g in G:
            lg = _lead(g)
            if _divides(lg, e):
                m = tuple(y - x for x, y in zip(lg, e))
                p = _sub_scaled(p, g, p[e] / g[lg], m)
                break
        else:
            r[e] = p.pop(e)
    return r


def naive_groebner(gens):
    """Reduced Groebner basis by reducing every S-pair until nothing new appears."""
    G = [dict(g) for g in gens if g]
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                a, b = _lead(G[i]), _lead(G[j])
                L = tuple(max(x, y) for x, y in zip(a, b))
                s = _sub_scaled({}, G[i], -1 / G[i][a], tuple(l - x for l, x in zip(L, a)))
                s = _sub_scaled(s, G[j], 1 / G[j][b], tuple(l - x for l, x in zip(L, b)))
                r = reduce_full(s, G)
                if r:
                    G.append(r)
                    changed = True
    # minimalize and reduce
    G = [g for g in G if not any(h is not g and _divides(_lead(h), _lead(g)) and
                                 (_lead(h) != _lead(g) or id(h) < id(g)) for h in G)]
    out = []
    for g in G:
        r = reduce_full(g, [h for h in G if h is not g])
        r[_lead(g)] = g[_lead(g)]
        c = r[_lead(g)]
        out.append({e: v / c for e, v in r.items()})
    return sorted(out, key=lambda p: _grevlex_key(_lead(p)))


# --- graded pieces of a standard graded Artinian algebra A = K[x_1..x_n]/I

def _monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class GradedAlgebraOracle:
    """A_d = S_d / I_d computed by linear algebra in each degree.

    ``gens`` are homogeneous polynomials given as {exponent: raw coefficient}
    dicts in n variables of degree 1.
    """

    def __init__(self, F, n, gens, max_degree=12):
        self.F, self.n = F, n
        self.monos, self.index, self.red, self.basis = {}, {}, {}, {}
        d = 0
        while d <= max_degree:
            ms = _monomials(n, d)
            idx = {m: i for i, m in enumerate(ms)}
            rows = []
            for g in gens:
                gd = sum(next(iter(g)))
                if gd > d:
                    continue
                for m in _monomials(n, d - gd):
                    v = [F.zero] * len(ms)
                    for e, c in g.items():
                        e2 = tuple(a + b for a, b in zip(e, m))
                        v[idx[e2]] = F.add(v[idx[e2]], c)
                    rows.append(v)
            R, piv = rref(rows, F) if rows else ([], [])
            self.monos[d], self.index[d], self.red[d] = ms, idx, (R, piv)
            self.basis[d] = [c for c in range(len(ms)) if c not in piv]
            if not self.basis[d]:
                self.top = d - 1
                break
            d += 1
        else:
            raise ValueError("algebra is not Artinian below max_degree")

    def hilbert(self):
        return [len(self.basis[d]) for d in range(self.top + 1)]

    def length(self):
        return sum(self.hilbert())

    def dim(self, d):
        return len(self.basis[d]) if 0 <= d <= self.top else 0

    def normal_form(self, d, v):
        """Coordinates on the standard basis of A_d of a vector in S_d coordinates."""
        F = self.F
        v = list(v)
        R, piv = self.red[d]
        for row, p in zip(R, piv):
            if not F.is_zero(v[p]):
                f = v[p]
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, row)]
        return [v[c] for c in self.basis[d]]

    def times_var(self, i, d, a):
        """x_i * a for a in A_d (coordinates), landing in A_{d+1}."""
        F = self.F
        if d + 1 > self.top:
            return []
        out = [F.zero] * len(self.monos[d + 1])
        for c, col in zip(a, self.basis[d]):
            if F.is_zero(c):
                continue
            e = list(self.monos[d][col])
            e[i] += 1
            j = self.index[d + 1][tuple(e)]
            out[j] = F.add(out[j], c)
        return self.normal_form(d + 1, out)


class _FreeGraded:
    """A free A-module with generators in the given degrees, viewed degreewise."""

    def __init__(self, A, gdeg):
        self.A, self.gdeg = A, list(gdeg)

    def dim(self, j):
        return sum(self.A.dim(j - a) for a in self.gdeg)

    def offsets(self, j):
        out, pos = [], 0
        for a in self.gdeg:
            out.append(pos)
            pos += self.A.dim(j - a)
        return out

    def times_var(self, i, j, v):
        """x_i * v for v in degree j."""
        A = self.A
        out = []
        offs = self.offsets(j)
        for k, a in enumerate(self.gdeg):
            part = v[offs[k]:offs[k] + A.dim(j - a)]
            if A.dim(j + 1 - a):
                out.extend(A.times_var(i, j - a, part) if part else [A.F.zero] * A.dim(j + 1 - a))
        return out


def _span_rank(rows, F):
    return rank(rows, F) if rows else 0


def betti_of_residue_field(A: GradedAlgebraOracle, top: int):
    """beta_0..beta_top of k over A from a degree-by-degree minimal resolution."""
    F = A.F
    Fr = _FreeGraded(A, [0])
    # K_j = kernel of the augmentation: all of A_j for j >= 1
    K = {j: [[F.one if r == c else F.zero for c in range(Fr.dim(j))] for r in range(Fr.dim(j))]
         for j in range(1, A.top + 1)}
    betti = [1]
    for _ in range(top):
        # minimal generators of K, degree by degree
        gens = []
        for j in sorted(K):
            if not K[j]:
                continue
            below = K.get(j - 1, [])
            prod = [Fr.times_var(i, j - 1, v) for v in below for i in range(A.n)]
            prod = [p for p in prod if any(not F.is_zero(c) for c in p)]
            basis = list(prod)
            r = _span_rank(basis, F)
            for v in K[j]:
                if _span_rank(basis + [v], F) > r:
                    basis.append(v)
                    r += 1
                    gens.append((j, v))
        betti.append(len(gens))
        if not gens:
            break
        # next free module and the kernel of the map onto the generators
        G = _FreeGraded(A, [j for j, _ in gens])
        lo, hi = min(G.gdeg), max(G.gdeg) + A.top
        newK = {}
        for j in range(lo, hi + 1):
            cols = []
            for k, (a, v) in enumerate(gens):
                # images of the standard basis monomials of A_{j-a} times the generator
                for col in A.basis.get(j - a, []) if 0 <= j - a <= A.top else []:
                    e = A.monos[j - a][col]
                    w, d = v, a
                    for i, power in enumerate(e):
                        for _ in range(power):
                            w = Fr.times_var(i, d, w)
                            d += 1
                    cols.append(w)
            if not cols:
                continue
            nrows = Fr.dim(j)
            if nrows == 0:
                newK[j] = [[F.one if r == c else F.zero for c in range(len(cols))] for r in range(len(cols))]
                continue
            rows = [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]
            newK[j] = kernel(rows, len(cols), F)
        Fr, K = G, newK
    return betti + [0] * (top + 1 - len(betti))
