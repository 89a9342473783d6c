"""Buchberger's algorithm for submodules of graded free modules S^r.

Vectors are dicts ``{(component, exponents): coefficient}``.  The engine is
incremental: vectors can be added between runs, and ``run(max_sugar=d)``
completes the basis only up to sugar d.  For homogeneous input the sugar of a
pair is its degree, so processing degree by degree yields minimal generators
for free (see ``minimal_generators`` in ops).

Pairs are pruned with the Gebauer-Moeller update (chain criterion).  The
coprime-lead criterion is only sound for ideals, or when one element of the
pair is a "scalar" element h*e_k with h*e_j present for every component j;
callers that add ring relations register them with ``scalar=True`` before
anything else so this holds.
"""
from __future__ import annotations

import heapq
from operator import le
from typing import Iterable, Sequence

from .poly import MonomialOrder, PolyRing


class GBEngine:
    def __init__(self, ring: PolyRing, shifts: Sequence[int], order: MonomialOrder | None = None):
        self.ring = ring
        self.F = ring.field
        self.shifts = tuple(shifts)
        self.rank = len(self.shifts)
        self.order = order if order is not None else ring.order
        if self.order.weights is None:
            self.order = self.order.with_weights(ring.degrees)
        self.nkey = self.order.make_nkey(self.shifts)
        self.weights = ring.degrees
        self.polys: list[dict] = []
        self.leads: list[tuple] = []
        self.sugar: list[int] = []
        self.scalar: list[bool] = []
        self.live: list[bool] = []
        self.reducers: dict[int, list[int]] = {}
        self.pairs: dict[tuple[int, int], tuple[int, tuple]] = {}
        self.heap: list = []
        self.stats = {"pairs": 0, "zero": 0, "criteria": 0}

    # --- helpers
    def deg(self, e: tuple) -> int:
        return sum(a * b for a, b in zip(self.weights, e))

    def vec_sugar(self, v: dict) -> int:
        sh = self.shifts
        w = self.weights
        return max(sum(a * b for a, b in zip(w, e)) + sh[c] for c, e in v)

    def lead(self, v: dict) -> tuple:
        return min(v, key=self.nkey)

    def find_reducer(self, mono: tuple) -> int | None:
        c, e = mono
        for i in self.reducers.get(c, ()):
            if all(map(le, self.leads[i][1], e)):
                return i
        return None

    # --- reduction
    def reduce(self, v: dict, full: bool = True, sugar: int | None = None) -> tuple[dict, int]:
        """Normal form of v; returns (remainder, sugar)."""
        F = self.F
        mul, sub, neg = F.mul, F.sub, F.neg
        nkey = self.nkey
        f = dict(v)
        if not f:
            return {}, sugar or 0
        if sugar is None:
            sugar = self.vec_sugar(f)
        heap = [(nkey(m), m) for m in f]
        heapq.heapify(heap)
        res: dict = {}
        polys, leads, sugars = self.polys, self.leads, self.sugar
        w = self.weights
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            _, m = pop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            j = self.find_reducer(m)
            if j is None:
                res[m] = c
                if not full:
                    for mm, cc in f.items():
                        res[mm] = cc
                    break
                continue
            comp, e = m
            le_ = leads[j]
            q = tuple(a - b for a, b in zip(e, le_[1]))
            s = sugars[j] + sum(a * b for a, b in zip(w, q))
            if s > sugar:
                sugar = s
            for (gc, ge), gcoef in polys[j].items():
                if gc == comp and ge == le_[1]:
                    continue
                nm = (gc, tuple(a + b for a, b in zip(ge, q)))
                t = mul(c, gcoef)
                old = f.get(nm)
                if old is None:
                    f[nm] = neg(t)
                    push(heap, (nkey(nm), nm))
                else:
                    val = sub(old, t)
                    if val:
                        f[nm] = val
                    else:
                        del f[nm]
        return res, sugar

    # --- insertion
    def add(self, v: dict, scalar: bool = False, reduce: bool = True) -> dict:
        """Reduce v and insert the remainder if nonzero; returns the remainder."""
        if not v:
            return {}
        if reduce:
            r, s = self.reduce(v)
        else:
            r, s = dict(v), self.vec_sugar(v)
        if r:
            self._insert(r, s, scalar and r == v)
        return r

    def add_many(self, vs: Iterable[dict], scalar: bool = False) -> None:
        for v in vs:
            self.add(v, scalar=scalar)

    def _insert(self, r: dict, s: int, scalar: bool) -> int:
        F = self.F
        lm = self.lead(r)
        lc = r[lm]
        if lc != F.one:
            inv = F.inv(lc)
            r = {m: F.mul(c, inv) for m, c in r.items()}
        k = len(self.polys)
        self.polys.append(r)
        self.leads.append(lm)
        self.sugar.append(s)
        self.scalar.append(scalar)
        self.live.append(True)
        self._update(k)
        return k

    def _prod_ok(self, i: int, k: int) -> bool:
        return self.rank == 1 or self.scalar[i] or self.scalar[k]

    def _update(self, k: int) -> None:
        c, ek = self.leads[k]
        same = self.reducers.setdefault(c, [])
        deg = self.deg
        cand = []
        for i in same:
            ei = self.leads[i][1]
            L = tuple(map(max, ei, ek))
            cop = self._prod_ok(i, k) and all(a == 0 or b == 0 for a, b in zip(ei, ek))
            cand.append((i, L, cop))
        kept = []
        for idx, (i, L, cop) in enumerate(cand):
            if cop:
                kept.append((i, L, cop))
                continue
            rest = cand[idx + 1:]
            if any(all(map(le, L2, L)) for _, L2, _ in rest):
                self.stats["criteria"] += 1
                continue
            if any(all(map(le, L2, L)) for _, L2, _ in kept):
                self.stats["criteria"] += 1
                continue
            kept.append((i, L, cop))
        # Old pairs whose lcm is divisible by the new lead, chain criterion.
        if self.pairs:
            dead = []
            for (a, b), (pc, Lab) in self.pairs.items():
                if pc != c or not all(map(le, ek, Lab)):
                    continue
                La = tuple(map(max, self.leads[a][1], ek))
                Lb = tuple(map(max, self.leads[b][1], ek))
                if La != Lab and Lb != Lab:
                    dead.append((a, b))
            for p in dead:
                del self.pairs[p]
            self.stats["criteria"] += len(dead)
        sk = self.sugar[k]
        dk = deg(ek)
        for i, L, cop in kept:
            if cop:
                self.stats["criteria"] += 1
                continue
            dL = deg(L)
            s = max(self.sugar[i] + dL - deg(self.leads[i][1]), sk + dL - dk)
            self.pairs[(i, k)] = (c, L)
            heapq.heappush(self.heap, (s, self.nkey((c, L)), i, k))
        # retire elements made redundant by the new lead
        keep = []
        for i in same:
            if all(map(le, ek, self.leads[i][1])):
                self.live[i] = False
            else:
                keep.append(i)
        keep.append(k)
        self.reducers[c] = keep

    def spoly(self, i: int, j: int, L: tuple) -> dict:
        F = self.F
        out: dict = {}
        for idx, sign in ((i, False), (j, True)):
            le_ = self.leads[idx][1]
            q = tuple(a - b for a, b in zip(L, le_))
            for (gc, ge), coef in self.polys[idx].items():
                m = (gc, tuple(a + b for a, b in zip(ge, q)))
                t = F.neg(coef) if sign else coef
                old = out.get(m)
                if old is None:
                    out[m] = t
                else:
                    v = F.add(old, t)
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return out

    def pending_min_sugar(self) -> int | None:
        while self.heap:
            s, _, i, j = self.heap[0]
            if (i, j) in self.pairs:
                return s
            heapq.heappop(self.heap)
        return None

    def run(self, max_sugar: int | None = None) -> None:
        while self.heap:
            s, _, i, j = self.heap[0]
            if max_sugar is not None and s > max_sugar:
                break
            heapq.heappop(self.heap)
            p = self.pairs.pop((i, j), None)
            if p is None:
                continue
            self.stats["pairs"] += 1
            sp = self.spoly(i, j, p[1])
            if not sp:
                self.stats["zero"] += 1
                continue
            r, rs = self.reduce(sp, sugar=s)
            if r:
                self._insert(r, rs, False)
            else:
                self.stats["zero"] += 1

    # --- output
    def live_indices(self) -> list[int]:
        return [i for i in range(len(self.polys)) if self.live[i]]

    def reduced_basis(self) -> list[dict]:
        """Reduced Groebner basis, sorted by lead term (largest first)."""
        idx = sorted(self.live_indices(), key=lambda i: self.nkey(self.leads[i]))
        out = []
        for i in idx:
            g = self.polys[i]
            lm = self.leads[i]
            tail = {m: c for m, c in g.items() if m != lm}
            r, _ = self.reduce(tail)
            r[lm] = self.F.one
            out.append(r)
        return out

    def contains(self, v: dict) -> bool:
        return not self.reduce(v, full=False)[0]
