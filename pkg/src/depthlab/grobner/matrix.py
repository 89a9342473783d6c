"""Sparse matrices over a polynomial ring, stored column-wise as vectors.

Column j is a vector dict ``{(row, exponents): coeff}``; this is the native
input format of the Groebner engine, so presentation matrices never need
conversion.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .poly import Poly, PolyRing, format_poly


def vec_add(F, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v = F.add(v, c)
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def vec_scale(F, v: dict, c) -> dict:
    if not c:
        return {}
    return {m: F.mul(x, c) for m, x in v.items()}


def vec_neg(F, v: dict) -> dict:
    return {m: F.neg(x) for m, x in v.items()}


def poly_times_vec(F, p: dict, v: dict) -> dict:
    """Polynomial (exps -> coeff) times vector."""
    out: dict = {}
    mul, add = F.mul, F.add
    for e, c in p.items():
        for (comp, ve), vc in v.items():
            m = (comp, tuple(a + b for a, b in zip(e, ve)))
            t = mul(c, vc)
            old = out.get(m)
            if old is None:
                out[m] = t
            else:
                s = add(old, t)
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def vec_components(v: dict) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for (c, e), x in v.items():
        out.setdefault(c, {})[e] = x
    return out


def vec_from_components(parts: dict[int, dict]) -> dict:
    return {(c, e): x for c, p in parts.items() for e, x in p.items()}


def vec_shift_components(v: dict, offset: int) -> dict:
    return {(c + offset, e): x for (c, e), x in v.items()}


def vec_restrict(v: dict, lo: int, hi: int, offset: int = 0) -> dict:
    """Keep components in [lo, hi) and renumber them by subtracting lo - offset."""
    return {(c - lo + offset, e): x for (c, e), x in v.items() if lo <= c < hi}


class Matrix:
    def __init__(self, ring: PolyRing, nrows: int, ncols: int, cols: list[dict] | None = None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]
        if len(self.cols) != ncols:
            raise ValueError("column count mismatch")

    # --- constructors
    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, x in enumerate(row):
                p = ring(x)
                for e, c in p.terms.items():
                    cols[j][(i, e)] = c
        return cls(ring, nrows, ncols, cols)

    @classmethod
    def from_columns(cls, ring: PolyRing, nrows: int, vectors: Iterable[dict]) -> "Matrix":
        cols = [dict(v) for v in vectors]
        return cls(ring, nrows, len(cols), cols)

    @classmethod
    def zero(cls, ring: PolyRing, nrows: int, ncols: int) -> "Matrix":
        return cls(ring, nrows, ncols)

    @classmethod
    def identity(cls, ring: PolyRing, n: int, scalar=None) -> "Matrix":
        one = ring.field.one if scalar is None else scalar
        z = ring.zero_exp
        return cls(ring, n, n, [{(i, z): one} for i in range(n)] if one else None)

    @classmethod
    def diagonal(cls, ring: PolyRing, entries: Sequence[Poly]) -> "Matrix":
        n = len(entries)
        cols = [{(i, e): c for e, c in ring(p).terms.items()} for i, p in enumerate(entries)]
        return cls(ring, n, n, cols)

    # --- access
    def entry(self, i: int, j: int) -> Poly:
        return Poly(self.ring, {e: c for (r, e), c in self.cols[j].items() if r == i})

    def rows_as_polys(self) -> list[list[Poly]]:
        out = [[self.ring.zero() for _ in range(self.ncols)] for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, p in vec_components(col).items():
                out[i][j] = Poly(self.ring, p)
        return out

    def column_entries(self, j: int) -> dict[int, dict]:
        return vec_components(self.cols[j])

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.cols == other.cols)

    def __repr__(self):
        rows = self.rows_as_polys()
        body = "; ".join(", ".join(format_poly(self.ring, p.terms) for p in r) for r in rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # --- arithmetic
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        F = self.ring.field
        return Matrix(self.ring, self.nrows, self.ncols,
                      [vec_add(F, a, b) for a, b in zip(self.cols, other.cols)])

    def __neg__(self) -> "Matrix":
        F = self.ring.field
        return Matrix(self.ring, self.nrows, self.ncols, [vec_neg(F, c) for c in self.cols])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, p) -> "Matrix":
        F = self.ring.field
        p = self.ring(p)
        return Matrix(self.ring, self.nrows, self.ncols,
                      [poly_times_vec(F, p.terms, c) for c in self.cols])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        F = self.ring.field
        out = []
        for col in other.cols:
            acc: dict = {}
            for k, p in vec_components(col).items():
                acc = vec_add(F, acc, poly_times_vec(F, p, self.cols[k]))
            out.append(acc)
        return Matrix(self.ring, self.nrows, other.ncols, out)

    def apply(self, v: dict) -> dict:
        F = self.ring.field
        acc: dict = {}
        for k, p in vec_components(v).items():
            acc = vec_add(F, acc, poly_times_vec(F, p, self.cols[k]))
        return acc

    def transpose(self) -> "Matrix":
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for (i, e), c in col.items():
                cols[i][(j, e)] = c
        return Matrix(self.ring, self.ncols, self.nrows, cols)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = list(range(self.nrows)) if rows is None else list(rows)
        cols = list(range(self.ncols)) if cols is None else list(cols)
        pos = {r: k for k, r in enumerate(rows)}
        new = []
        for j in cols:
            new.append({(pos[i], e): c for (i, e), c in self.cols[j].items() if i in pos})
        return Matrix(self.ring, len(rows), len(cols), new)

    def map_entries(self, fn) -> "Matrix":
        """Apply fn: poly-dict -> poly-dict entrywise."""
        cols = []
        for col in self.cols:
            parts = {i: fn(p) for i, p in vec_components(col).items()}
            cols.append(vec_from_components({i: p for i, p in parts.items() if p}))
        return Matrix(self.ring, self.nrows, self.ncols, cols)

    def _same_shape(self, other: "Matrix"):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    # --- degrees
    def column_degree(self, j: int, row_degrees: Sequence[int]) -> int | None:
        """Degree of column j given row degrees; None for a zero column.

        Raises ValueError if the column is not homogeneous.
        """
        w = self.ring.degrees
        degs = {sum(a * b for a, b in zip(w, e)) + row_degrees[i] for (i, e) in self.cols[j]}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"column {j} is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self, row_degrees: Sequence[int], col_degrees: Sequence[int]) -> bool:
        for j in range(self.ncols):
            try:
                d = self.column_degree(j, row_degrees)
            except ValueError:
                return False
            if d is not None and d != col_degrees[j]:
                return False
        return True


def hstack(*mats: Matrix) -> Matrix:
    ring = mats[0].ring
    nrows = mats[0].nrows
    cols = []
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("row count mismatch in hstack")
        cols.extend(m.cols)
    return Matrix(ring, nrows, len(cols), cols)


def vstack(*mats: Matrix) -> Matrix:
    ring = mats[0].ring
    ncols = mats[0].ncols
    cols = [{} for _ in range(ncols)]
    off = 0
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column count mismatch in vstack")
        for j, col in enumerate(m.cols):
            for (i, e), c in col.items():
                cols[j][(i + off, e)] = c
        off += m.nrows
    return Matrix(ring, off, ncols, cols)


def block(rows: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack(*[hstack(*r) for r in rows])


def block_diag(*mats: Matrix) -> Matrix:
    ring = mats[0].ring
    nrows = sum(m.nrows for m in mats)
    cols = []
    off = 0
    for m in mats:
        for col in m.cols:
            cols.append({(i + off, e): c for (i, e), c in col.items()})
        off += m.nrows
    return Matrix(ring, nrows, len(cols), cols)


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; row (i, k) -> i*B.nrows + k, column (j, l) -> j*B.ncols + l."""
    ring = A.ring
    F = ring.field
    cols = []
    bparts = [vec_components(c) for c in B.cols]
    for j in range(A.ncols):
        aparts = vec_components(A.cols[j])
        for l in range(B.ncols):
            out: dict = {}
            for i, pa in aparts.items():
                for k, pb in bparts[l].items():
                    r = i * B.nrows + k
                    for ea, ca in pa.items():
                        for eb, cb in pb.items():
                            m = (r, tuple(x + y for x, y in zip(ea, eb)))
                            t = F.mul(ca, cb)
                            old = out.get(m)
                            if old is None:
                                out[m] = t
                            else:
                                s = F.add(old, t)
                                if s:
                                    out[m] = s
                                else:
                                    del out[m]
            cols.append(out)
    return Matrix(ring, A.nrows * B.nrows, A.ncols * B.ncols, cols)
