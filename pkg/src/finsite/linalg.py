"""Exact dense linear algebra over the rationals or a prime field.

Entries are Fraction (rationals) or int in range(p) (prime fields); no
floating point anywhere. Matrices carry their shape explicitly so zero-row
and zero-column cases stay unambiguous. Elimination pivots on the first
nonzero entry in row-major order, so echelon forms, kernels, and selected
bases are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeMismatch


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: p=None means Q, otherwise the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
                raise ValueError(f"field order must be prime, got {self.p}")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def of(self, n) :
        """Coerce an int, Fraction, or numeric string into the field."""
        if self.p is not None:
            if isinstance(n, str):
                n = int(n)
            if isinstance(n, Fraction):
                if n.denominator % self.p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {self.p}")
                return (n.numerator * pow(n.denominator, -1, self.p)) % self.p
            return int(n) % self.p
        return Fraction(n)

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if self.p is not None:
            return pow(a, -1, self.p)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, s: str):
        """Parse a serialized entry: "2", "-3/7" (rationals allowed / only)."""
        s = s.strip()
        if self.p is not None:
            return self.of(int(s))
        return Fraction(s)

    def fmt(self, a) -> str:
        return str(a)

    def elements(self) -> list:
        """All field elements; finite fields only."""
        if self.p is None:
            raise ValueError("cannot enumerate the rationals")
        return list(range(self.p))

    def label(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


QQ = FieldSpec(None)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


Vector = tuple  # length-n tuple of field elements


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix with explicit shape."""

    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeMismatch(f"entries do not match shape {self.rows}x{self.cols}")

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def __getitem__(self, ij: tuple[int, int]):
        return self.entries[ij[0]][ij[1]]


def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> Mat:
    rows = [tuple(r) for r in rows]
    if cols is None:
        if not rows:
            raise ShapeMismatch("cannot infer column count of an empty matrix")
        cols = len(rows[0])
    return Mat(len(rows), cols, tuple(rows))


def from_cols(cols: Sequence[Sequence], rows: int | None = None) -> Mat:
    cols = [tuple(c) for c in cols]
    if rows is None:
        if not cols:
            raise ShapeMismatch("cannot infer row count of an empty matrix")
        rows = len(cols[0])
    return Mat(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))


def zeros(field: FieldSpec, rows: int, cols: int) -> Mat:
    z = field.zero()
    return Mat(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))


def identity(field: FieldSpec, n: int) -> Mat:
    z, o = field.zero(), field.one()
    return Mat(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))


def mat_eq_zero(m: Mat) -> bool:
    return all(x == 0 for r in m.entries for x in r)


def matmul(field: FieldSpec, a: Mat, b: Mat) -> Mat:
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    z = field.zero()
    out = []
    for i in range(a.rows):
        arow = a.entries[i]
        row = []
        for j in range(b.cols):
            acc = z
            for k in range(a.cols):
                acc = field.add(acc, field.mul(arow[k], b.entries[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return Mat(a.rows, b.cols, tuple(out))


def mat_add(field: FieldSpec, a: Mat, b: Mat) -> Mat:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeMismatch("shape mismatch in add")
    return Mat(a.rows, a.cols, tuple(
        tuple(field.add(a.entries[i][j], b.entries[i][j]) for j in range(a.cols))
        for i in range(a.rows)))


def mat_sub(field: FieldSpec, a: Mat, b: Mat) -> Mat:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeMismatch("shape mismatch in sub")
    return Mat(a.rows, a.cols, tuple(
        tuple(field.sub(a.entries[i][j], b.entries[i][j]) for j in range(a.cols))
        for i in range(a.rows)))


def mat_scale(field: FieldSpec, c, a: Mat) -> Mat:
    return Mat(a.rows, a.cols, tuple(
        tuple(field.mul(c, x) for x in r) for r in a.entries))


def transpose(a: Mat) -> Mat:
    return Mat(a.cols, a.rows, tuple(tuple(a.entries[i][j] for i in range(a.rows))
                                     for j in range(a.cols)))


def vstack(mats: Sequence[Mat], cols: int | None = None) -> Mat:
    if not mats:
        if cols is None:
            raise ShapeMismatch("vstack of nothing needs an explicit column count")
        return Mat(0, cols, ())
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeMismatch("vstack column mismatch")
    return Mat(sum(m.rows for m in mats), cols,
               tuple(r for m in mats for r in m.entries))


def hstack(mats: Sequence[Mat], rows: int | None = None) -> Mat:
    if not mats:
        if rows is None:
            raise ShapeMismatch("hstack of nothing needs an explicit row count")
        return Mat(rows, 0, tuple(() for _ in range(rows)))
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeMismatch("hstack row mismatch")
    return Mat(rows, sum(m.cols for m in mats),
               tuple(tuple(x for m in mats for x in m.entries[i]) for i in range(rows)))


def block_diag(field: FieldSpec, mats: Sequence[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[field.zero()] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out[r0 + i][c0 + j] = m.entries[i][j]
        r0 += m.rows
        c0 += m.cols
    return Mat(rows, cols, tuple(tuple(r) for r in out))


def rref(field: FieldSpec, a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns, first-nonzero pivoting."""
    m = [list(r) for r in a.entries]
    pivots = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        pr = next((i for i in range(r, a.rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(a.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Mat(a.rows, a.cols, tuple(tuple(row) for row in m)), tuple(pivots)


def rank(field: FieldSpec, a: Mat) -> int:
    return len(rref(field, a)[1])


def kernel_basis(field: FieldSpec, a: Mat) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column, canonical order."""
    r, pivots = rref(field, a)
    pivot_set = set(pivots)
    free = [c for c in range(a.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero()] * a.cols
        v[fc] = field.one()
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(r.entries[i][fc])
        basis.append(tuple(v))
    return basis


def solve(field: FieldSpec, a: Mat, b: Vector) -> Vector | None:
    """One solution of a x = b, or None. Deterministic (free vars = 0)."""
    if len(b) != a.rows:
        raise ShapeMismatch("rhs length mismatch")
    aug = Mat(a.rows, a.cols + 1, tuple(r + (b[i],) for i, r in enumerate(a.entries)))
    r, pivots = rref(field, aug)
    if a.cols in pivots:
        return None
    x = [field.zero()] * a.cols
    for i, pc in enumerate(pivots):
        x[pc] = r.entries[i][a.cols]
    return tuple(x)


def solve_matrix(field: FieldSpec, a: Mat, b: Mat) -> Mat | None:
    """X with a X = b, or None if some column is unsolvable."""
    if b.rows != a.rows:
        raise ShapeMismatch("rhs row mismatch")
    cols = []
    for j in range(b.cols):
        x = solve(field, a, b.col(j))
        if x is None:
            return None
        cols.append(x)
    return from_cols(cols, rows=a.cols)


def inverse(field: FieldSpec, a: Mat) -> Mat | None:
    if a.rows != a.cols:
        return None
    x = solve_matrix(field, a, identity(field, a.rows))
    if x is None:
        return None
    return x if matmul(field, a, x).entries == identity(field, a.rows).entries else None


def is_invertible(field: FieldSpec, a: Mat) -> bool:
    return a.rows == a.cols and rank(field, a) == a.rows


def independent_columns(field: FieldSpec, a: Mat) -> list[int]:
    """Greedy left-to-right selection of a column basis (deterministic)."""
    return list(rref(field, a)[1])


def column_space_basis(field: FieldSpec, a: Mat) -> list[Vector]:
    return [a.col(j) for j in independent_columns(field, a)]


def span_basis(field: FieldSpec, vectors: Iterable[Vector], dim: int) -> list[Vector]:
    """Canonical basis of the span of `vectors` inside k^dim."""
    vecs = [v for v in vectors if any(x != 0 for x in v)]
    if not vecs:
        return []
    m = from_cols(vecs, rows=dim)
    return [m.col(j) for j in independent_columns(field, m)]


def in_span(field: FieldSpec, basis: Sequence[Vector], v: Vector, dim: int) -> bool:
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return solve(field, from_cols(basis, rows=dim), v) is not None


def intersect_spans(field: FieldSpec, a: Sequence[Vector], b: Sequence[Vector],
                    dim: int) -> list[Vector]:
    """Basis of span(a) intersected with span(b) inside k^dim."""
    if not a or not b:
        return []
    ma = from_cols(a, rows=dim)
    mb = from_cols(b, rows=dim)
    neg = mat_scale(field, field.neg(field.one()), mb)
    combined = hstack([ma, neg])
    vecs = []
    for k in kernel_basis(field, combined):
        u = k[: ma.cols]
        vec = matmul(field, ma, from_cols([u])).col(0)
        vecs.append(vec)
    return span_basis(field, vecs, dim)


def mat_vec(field: FieldSpec, a: Mat, v: Vector) -> Vector:
    if len(v) != a.cols:
        raise ShapeMismatch("vector length mismatch")
    z = field.zero()
    out = []
    for i in range(a.rows):
        acc = z
        for j in range(a.cols):
            acc = field.add(acc, field.mul(a.entries[i][j], v[j]))
        out.append(acc)
    return tuple(out)


def mat_to_strings(field: FieldSpec, a: Mat) -> list[list[str]]:
    return [[field.fmt(x) for x in r] for r in a.entries]


def mat_from_strings(field: FieldSpec, rows: Sequence[Sequence[str]],
                     shape: tuple[int, int]) -> Mat:
    r, c = shape
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ShapeMismatch(f"serialized matrix does not have shape {r}x{c}")
    return Mat(r, c, tuple(tuple(field.parse(x) for x in row) for row in rows))
