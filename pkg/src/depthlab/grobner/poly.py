"""Polynomial rings, monomial orders and polynomials.

A monomial of a free module S^r is a pair (component, exponent tuple).  Ring
elements live in component 0.  Orders are realised as sort keys: for every
order we build ``nkey`` with the property that ascending ``nkey`` is the same
as descending term order, which is what the heap-based reduction wants.
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from ..exactmath import Field, FieldElem, RationalFunctionField
from . import expr as _expr

BASE_ORDERS = ("grevlex", "lex", "grlex")
MODULE_ORDERS = ("POT", "TOP")


class _KeyCache(dict):
    __slots__ = ("fn",)

    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, mono):
        k = self.fn(mono)
        self[mono] = k
        return k


class MonomialOrder:
    """Base order on exponent vectors plus a module convention.

    ``weights`` default to the variable degrees; POT compares component first
    (component 0 is the largest), TOP compares weighted degree plus component
    shift first.
    """

    def __init__(self, base: str = "grevlex", module: str = "POT",
                 weights: Sequence[int] | None = None):
        if base not in BASE_ORDERS:
            raise ValueError(f"unknown monomial order {base!r}")
        if module not in MODULE_ORDERS:
            raise ValueError(f"unknown module order {module!r}")
        self.base = base
        self.module = module
        self.weights = tuple(weights) if weights is not None else None

    def with_weights(self, weights: Sequence[int]) -> "MonomialOrder":
        return MonomialOrder(self.base, self.module, weights if self.weights is None else self.weights)

    def exp_key(self, e: tuple) -> tuple:
        """Ascending key on exponent vectors (bigger key = bigger monomial)."""
        w = self.weights
        d = sum(a * b for a, b in zip(w, e)) if w else sum(e)
        if self.base == "grevlex":
            return (d,) + tuple(-x for x in reversed(e))
        if self.base == "grlex":
            return (d,) + e
        return e

    def make_nkey(self, shifts: Sequence[int] | None = None):
        """Return a cached function mono -> key, ascending = descending order."""
        w = self.weights
        base = self.base
        if base == "grevlex":
            def ek(e):
                return (-sum(a * b for a, b in zip(w, e)),) + e[::-1]
        elif base == "grlex":
            def ek(e):
                return (-sum(a * b for a, b in zip(w, e)),) + tuple(-x for x in e)
        else:
            def ek(e):
                return tuple(-x for x in e)
        if self.module == "POT":
            def fn(mono):
                return (mono[0],) + ek(mono[1])
        else:
            sh = tuple(shifts) if shifts is not None else None

            def fn(mono):
                c, e = mono
                d = sum(a * b for a, b in zip(w, e)) + (sh[c] if sh else 0)
                return (-d,) + ek(e) + (c,)
        return _KeyCache(fn).__getitem__

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.base == other.base
                and self.module == other.module and self.weights == other.weights)

    def __hash__(self):
        return hash((self.base, self.module, self.weights))

    def __repr__(self):
        return f"MonomialOrder({self.base!r}, {self.module!r}, weights={self.weights})"


class PolyRing:
    """S = K[x_1..x_n] with positive integer variable degrees."""

    def __init__(self, field: Field, names: Sequence[str], degrees: Sequence[int] | None = None,
                 order: MonomialOrder | str = "grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if isinstance(field, RationalFunctionField) and field.var in names:
            raise ValueError(f"variable {field.var!r} clashes with the field parameter")
        self.field = field
        self.names = names
        self.n = len(names)
        self.degrees = tuple(degrees) if degrees is not None else (1,) * self.n
        if len(self.degrees) != self.n or any(d <= 0 for d in self.degrees):
            raise ValueError("variable degrees must be positive, one per variable")
        if isinstance(order, str):
            order = MonomialOrder(order)
        self.order = order.with_weights(self.degrees)
        self.zero_exp = (0,) * self.n
        self._nkey = self.order.make_nkey()

    # --- identity
    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names and self.degrees == other.degrees
                and self.order == other.order)

    def __hash__(self):
        return hash((self.field, self.names, self.degrees))

    def __repr__(self):
        if all(d == 1 for d in self.degrees):
            vs = ",".join(self.names)
        else:
            vs = ",".join(f"{v}:{d}" for v, d in zip(self.names, self.degrees))
        return f"{self.field.name()}[{vs}]"

    # --- construction
    def gens(self) -> list["Poly"]:
        out = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            out.append(Poly(self, {tuple(e): self.field.one}))
        return out

    def gen(self, name: str) -> "Poly":
        return self.gens()[self.names.index(name)]

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.zero_exp: self.field.one})

    def const(self, c) -> "Poly":
        c = self.field.coerce(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        c = self.field.coerce(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise ValueError("polynomial from a different ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> "Poly":
        tree = _expr.parse_expression(text)
        return self.eval_expr(tree)

    def eval_expr(self, tree) -> "Poly":
        field = self.field
        param = field.var if isinstance(field, RationalFunctionField) else None

        def leaf_var(name):
            if name in self.names:
                return self.gen(name)
            if name == param:
                return Poly(self, {self.zero_exp: field.gen()})
            raise KeyError(name)

        return _expr.evaluate(tree, leaf_var, self.const)

    def exp_degree(self, e: tuple) -> int:
        return sum(a * b for a, b in zip(self.degrees, e))

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """All exponent vectors of weighted degree d."""
        out: list[tuple] = []
        degs = self.degrees
        n = self.n

        def rec(i, rest, cur):
            if i == n - 1:
                if rest % degs[i] == 0:
                    out.append(tuple(cur + [rest // degs[i]]))
                return
            for a in range(rest // degs[i] + 1):
                rec(i + 1, rest - a * degs[i], cur + [a])

        if d < 0:
            return []
        if n == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        return out

    def random_homogeneous(self, rng: random.Random, degree: int, density: float = 0.6,
                           bound: int = 3) -> "Poly":
        F = self.field
        terms = {}
        for e in self.monomials_of_degree(degree):
            if rng.random() < density:
                c = F.coerce(rng.randint(-bound, bound))
                if c:
                    terms[e] = c
        return Poly(self, terms)

    def sort_key(self, e: tuple):
        return self._nkey((0, e))


class Poly:
    """Element of a PolyRing; terms maps exponent tuples to nonzero raw coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.ring.const(other.value if isinstance(other, FieldElem) else other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, padd(self.ring.field, self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Poly(self.ring, pmul(self.ring.field, self.terms, other.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if len(other.terms) != 1 or other.ring.zero_exp not in other.terms:
            raise ValueError("only division by nonzero scalars is supported")
        return self.scale(self.ring.field.inv(other.terms[other.ring.zero_exp]))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        F = self.ring.field
        if not c:
            return Poly(self.ring, {})
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(e == self.ring.zero_exp for e in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero")
        return max(self.ring.exp_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.exp_degree(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        k = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: k(t[0]))

    def lead_exp(self) -> tuple:
        return self.sorted_terms()[0][0]

    def lead_coeff(self):
        return self.sorted_terms()[0][1]

    def monic(self) -> "Poly":
        return self.scale(self.ring.field.inv(self.lead_coeff())) if self.terms else self

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def __repr__(self):
        return format_poly(self.ring, self.terms)


def padd(F, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            out[e] = c
        else:
            v = F.add(v, c)
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def pmul(F, a: dict, b: dict) -> dict:
    out: dict = {}
    mul, add = F.mul, F.add
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            t = mul(ca, cb)
            v = out.get(e)
            if v is None:
                out[e] = t
            else:
                v = add(v, t)
                if v:
                    out[e] = v
                else:
                    del out[e]
    return out


def format_poly(ring: PolyRing, terms: dict) -> str:
    if not terms:
        return "0"
    F = ring.field
    parts = []
    k = ring.sort_key
    for e in sorted(terms, key=k):
        c = F.fmt(terms[e])
        mono = "*".join(
            (n if a == 1 else f"{n}^{a}") for n, a in zip(ring.names, e) if a)
        if not mono:
            parts.append(c)
        elif c == "1":
            parts.append(mono)
        elif c == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts).replace("+-", "-")


def polys(ring: PolyRing, items: Iterable) -> list[Poly]:
    return [ring(x) for x in items]
