"""Exact scalar fields and dense linear algebra over them.

Three kinds of field are supported: the rationals, prime fields GF(p), and
univariate rational function fields K(t) over either of those.  Field objects
operate on raw values (``Fraction``, ``int`` or ``RatFunc``) so the Groebner
engine can call them without wrapper overhead; ``FieldElem`` is the
user-facing wrapper with operator overloading.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Iterable, Sequence

DEFAULT_PRIME = 32003


class Field:
    """Base class; subclasses implement arithmetic on raw values."""

    characteristic = 0
    zero: Any = None
    one: Any = None

    def __call__(self, value) -> "FieldElem":
        return FieldElem(self, self.coerce(value))

    def coerce(self, value):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_one(self, a) -> bool:
        return a == self.one

    def elem(self, value) -> "FieldElem":
        return self(value)

    def random_element(self, rng: random.Random, bound: int = 5):
        return self.coerce(rng.randint(-bound, bound))

    def __repr__(self):
        return self.name()

    def name(self) -> str:
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, FieldElem):
            value = value.value
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def fmt(self, a) -> str:
        return str(a)

    def name(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def coerce(self, value):
        if isinstance(value, FieldElem):
            value = value.value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator % self.p * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot coerce {value!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def fmt(self, a) -> str:
        # print symmetric representatives so small negatives stay readable
        return str(a - self.p if a > self.p // 2 else a)

    def name(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


# --- univariate polynomials over a base field, as coefficient tuples low->high

def _ustrip(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _uadd(K, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(K.add(a[i], b[i]))
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(b[i])
    return _ustrip(out)


def _uneg(K, a):
    return tuple(K.neg(x) for x in a)


def _umul(K, a, b):
    if not a or not b:
        return ()
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return _ustrip(out)


def _uscale(K, a, c):
    return _ustrip([K.mul(x, c) for x in a])


def _udivmod(K, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    inv_lead = K.inv(b[-1])
    while len(r) >= len(b) and r:
        c = K.mul(r[-1], inv_lead)
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = K.sub(r[shift + i], K.mul(c, y))
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return _ustrip(q), tuple(r)


def _umonic(K, a):
    if not a:
        return a, K.one
    lead = a[-1]
    if lead == K.one:
        return a, lead
    inv = K.inv(lead)
    return tuple(K.mul(x, inv) for x in a), lead


def _ugcd(K, a, b):
    while b:
        a, b = b, _udivmod(K, a, b)[1]
    return _umonic(K, a)[0]


class RatFunc:
    """A reduced fraction num/den of univariate polynomials, den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: tuple, den: tuple):
        self.num = num
        self.den = den
        self._hash = None

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if other == 0:
            return not self.num
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den})"


class RationalFunctionField(Field):
    """K(t) for K = Q or GF(p); elements are RatFunc values."""

    def __init__(self, base: Field, var: str = "t"):
        if isinstance(base, RationalFunctionField):
            raise ValueError("only one transcendental parameter is supported")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self._one_poly = (base.one,)
        self.zero = RatFunc((), self._one_poly)
        self.one = RatFunc(self._one_poly, self._one_poly)

    def _make(self, num, den):
        K = self.base
        if not num:
            return self.zero
        if den == self._one_poly:
            return RatFunc(num, den)
        g = _ugcd(K, num, den)
        if g != self._one_poly:
            num = _udivmod(K, num, g)[0]
            den = _udivmod(K, den, g)[0]
        den, lead = _umonic(K, den)
        if lead != K.one:
            num = _uscale(K, num, K.inv(lead))
        return RatFunc(num, den)

    def gen(self) -> RatFunc:
        return RatFunc((self.base.zero, self.base.one), self._one_poly)

    def from_poly(self, coeffs: Sequence) -> RatFunc:
        K = self.base
        return self._make(_ustrip([K.coerce(c) for c in coeffs]), self._one_poly)

    def coerce(self, value):
        if isinstance(value, FieldElem):
            if value.field == self:
                return value.value
            value = value.value
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, str):
            value = Fraction(value)
        c = self.base.coerce(value)
        return RatFunc((c,), self._one_poly) if c != 0 else self.zero

    def is_zero(self, a) -> bool:
        return not a.num

    def add(self, a, b):
        K = self.base
        if not a.num:
            return b
        if not b.num:
            return a
        if a.den == b.den:
            return self._make(_uadd(K, a.num, b.num), a.den)
        num = _uadd(K, _umul(K, a.num, b.den), _umul(K, b.num, a.den))
        return self._make(num, _umul(K, a.den, b.den))

    def neg(self, a):
        return RatFunc(_uneg(self.base, a.num), a.den)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        K = self.base
        if not a.num or not b.num:
            return self.zero
        if a.den == self._one_poly and b.den == self._one_poly:
            return RatFunc(_umul(K, a.num, b.num), self._one_poly)
        return self._make(_umul(K, a.num, b.num), _umul(K, a.den, b.den))

    def inv(self, a):
        if not a.num:
            raise ZeroDivisionError("inverse of zero")
        return self._make(a.den, a.num)

    def random_element(self, rng: random.Random, bound: int = 5):
        # small polynomials in t keep fractions tame in randomized tests
        deg = rng.randint(0, 1)
        coeffs = [rng.randint(-bound, bound) for _ in range(deg + 1)]
        return self.from_poly(coeffs)

    def _fmt_poly(self, c) -> str:
        K = self.base
        parts = []
        for i in range(len(c) - 1, -1, -1):
            if c[i] == 0:
                continue
            s = K.fmt(c[i])
            if i == 0:
                parts.append(s)
                continue
            mono = self.var if i == 1 else f"{self.var}^{i}"
            if s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{s}*{mono}")
        text = "+".join(parts).replace("+-", "-")
        return text or "0"

    def fmt(self, a) -> str:
        num = self._fmt_poly(a.num)
        if a.den == self._one_poly:
            return num if len([x for x in a.num if x != 0]) <= 1 else f"({num})"
        return f"({num})/({self._fmt_poly(a.den)})"

    def name(self) -> str:
        return f"{self.base.name()}({self.var})"

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField)
                and other.base == self.base and other.var == self.var)

    def __hash__(self):
        return hash(("RF", self.base, self.var))


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str, var: str = "t") -> Field:
    """Parse the CLI spellings Q, Qt, Fp:P and Fpt:P."""
    s = spec.strip()
    if s == "Q":
        return QQ
    if s == "Qt":
        return RationalFunctionField(QQ, var)
    if s.startswith("Fpt:"):
        return RationalFunctionField(PrimeField(int(s[4:])), var)
    if s.startswith("Fp:"):
        return PrimeField(int(s[3:]))
    if s == "Fp":
        return PrimeField(DEFAULT_PRIME)
    if s == "Fpt":
        return RationalFunctionField(PrimeField(DEFAULT_PRIME), var)
    raise ValueError(f"unknown field spec {spec!r}")


class FieldElem:
    """An element of a Field with Python operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return self.field.fmt(self.value)


class DenseMatrix:
    """Row-major matrix of raw field values."""

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [[field.coerce(x) for x in row] for row in rows]
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.nrows = len(self.rows)
        self.ncols = ncols

    @classmethod
    def raw(cls, field: Field, rows: list[list], ncols: int) -> "DenseMatrix":
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "DenseMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return FieldElem(self.field, self.rows[i][j])

    def __eq__(self, other):
        return (isinstance(other, DenseMatrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __mul__(self, other: "DenseMatrix") -> "DenseMatrix":
        F = self.field
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for row in self.rows:
            new = [F.zero] * other.ncols
            for k, a in enumerate(row):
                if F.is_zero(a):
                    continue
                for j, b in enumerate(other.rows[k]):
                    if not F.is_zero(b):
                        new[j] = F.add(new[j], F.mul(a, b))
            out.append(new)
        return DenseMatrix.raw(F, out, other.ncols)

    def apply(self, vec: Sequence) -> list:
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for a, b in zip(row, vec):
                if not F.is_zero(a) and not F.is_zero(b):
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def transpose(self) -> "DenseMatrix":
        cols = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return DenseMatrix.raw(self.field, cols, self.nrows)

    def rref(self) -> tuple["DenseMatrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        F = self.field
        rows = [list(r) for r in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, len(rows)) if not F.is_zero(rows[i][c])), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(x, inv) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and not F.is_zero(rows[i][c]):
                    f = rows[i][c]
                    rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return DenseMatrix.raw(F, rows, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])


def rank_and_kernel(A: DenseMatrix) -> tuple[int, DenseMatrix]:
    """Rank of A and a basis of its right kernel, as rows of a matrix in RREF.

    Always rank + number of kernel rows == A.ncols.
    """
    F = A.field
    R, pivots = A.rref()
    free = [c for c in range(A.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * A.ncols
        v[f] = F.one
        for i, p in enumerate(pivots):
            v[p] = F.neg(R.rows[i][f])
        basis.append(v)
    K = DenseMatrix.raw(F, basis, A.ncols)
    if basis:
        K = K.rref()[0]
    return len(pivots), K
