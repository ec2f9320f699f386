"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; a :class:`Matrix` is an immutable
row-major table of them acting on column vectors.  Pivoting is deterministic
(leftmost nonzero column, topmost nonzero row) so every basis handed out by
this module is canonical.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "Fraction",
    "Matrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "quotient_basis",
    "extend_basis",
    "inverse",
    "format_rational",
    "parse_rational",
]


def parse_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Matrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        data = tuple(tuple(parse_rational(x) for x in row) for row in _chunk(entries, rows, cols))
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, data: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = data
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls._raw(len(rows), cols, tuple(tuple(parse_rational(x) for x in r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls._raw(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(n, n, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def to_rows(self) -> list:
        return [list(r) for r in self._data]

    def entries(self) -> tuple:
        return tuple(x for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix._raw(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self._data))

    def scale(self, c) -> "Matrix":
        c = parse_rational(c)
        return Matrix._raw(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self._data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.cols
        z = Fraction(0)
        # sparse row times dense matrix; entries are mostly zero at desk scale
        other_rows = other._data
        out = []
        for r in self._data:
            acc = [z] * ocols
            for k, a in enumerate(r):
                if a:
                    orow = other_rows[k]
                    for j in range(ocols):
                        b = orow[j]
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(self.rows, ocols, tuple(out))

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(zip(*self._data)) if self.rows else
                           tuple(() for _ in range(self.cols)))

    def transpose(self) -> "Matrix":
        return self.T

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self._data))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(len(idx), self.cols, tuple(self._data[i] for i in idx))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(r1 - r0, c1 - c0, tuple(r[c0:c1] for r in self._data[r0:r1]))

    @staticmethod
    def hstack(blocks: Sequence["Matrix"], rows: Optional[int] = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(rows or 0, 0)
        n = blocks[0].rows
        for b in blocks:
            if b.rows != n:
                raise ValueError("hstack row mismatch")
        data = tuple(sum((b._data[i] for b in blocks), ()) for i in range(n))
        return Matrix._raw(n, sum(b.cols for b in blocks), data)

    @staticmethod
    def vstack(blocks: Sequence["Matrix"], cols: Optional[int] = None) -> "Matrix":
        if not blocks:
            return Matrix.zeros(0, cols or 0)
        n = blocks[0].cols
        for b in blocks:
            if b.cols != n:
                raise ValueError("vstack column mismatch")
        return Matrix._raw(sum(b.rows for b in blocks), n, sum((b._data for b in blocks), ()))

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = Fraction(0)
        out = []
        c0 = 0
        for b in blocks:
            left = (z,) * c0
            right = (z,) * (cols - c0 - b.cols)
            out.extend(left + r + right for r in b._data)
            c0 += b.cols
        return Matrix._raw(rows, cols, tuple(out))


def _chunk(entries, rows, cols):
    flat = list(entries)
    if len(flat) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
    return [flat[i * cols:(i + 1) * cols] for i in range(rows)]


def _same_shape(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _rref_rows(rows: list, ncols: int) -> list:
    """In-place Gauss-Jordan on a list of lists; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple:
    """Reduced row-echelon form of ``m`` as ``(reduced, pivots, rank)``."""
    rows = m.to_rows()
    pivots = _rref_rows(rows, m.cols)
    reduced = Matrix._raw(m.rows, m.cols, tuple(tuple(r) for r in rows))
    return reduced, tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # reduce along the shorter side
    if m.rows > m.cols:
        m = m.T
    return len(_rref_rows(m.to_rows(), m.cols))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space; one column per free variable."""
    reduced, pivots, _ = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    cols = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, j]
        cols.append(v)
    return Matrix.from_columns(cols, m.cols)


def solve(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """A particular solution ``x`` of ``m @ x == b`` or None if inconsistent.

    Free variables are set to zero.
    """
    if m.rows != b.rows:
        raise ValueError(f"dimension mismatch: {m.shape} vs right-hand side {b.shape}")
    aug = [list(m.row(i)) + list(b.row(i)) for i in range(m.rows)]
    pivots = _rref_rows(aug, m.cols + b.cols)
    if pivots and pivots[-1] >= m.cols:
        return None
    x = [[Fraction(0)] * b.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        x[p] = aug[i][m.cols:]
    return Matrix._raw(m.cols, b.cols, tuple(tuple(r) for r in x))


def quotient_basis(sub: Matrix, ambient_dim: int) -> tuple:
    """Projection onto ``Q^ambient_dim / span(sub)`` and a section of it.

    The quotient is identified with the standard coordinates that are not
    pivots of ``rref(sub.T)``, lowest index first; ``section`` maps the
    quotient onto exactly those coordinates.
    """
    if sub.rows != ambient_dim:
        raise ValueError("sub must have ambient_dim rows")
    if sub.cols == 0:
        eye = Matrix.identity(ambient_dim)
        return eye, eye
    reduced, pivots, r = rref(sub.T)
    pivot_set = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivot_set]
    z, one = Fraction(0), Fraction(1)
    proj = []
    for j in free:
        row = [z] * ambient_dim
        row[j] = one
        for i, p in enumerate(pivots):
            row[p] = -reduced[i, j]
        proj.append(tuple(row))
    projection = Matrix._raw(len(free), ambient_dim, tuple(proj))
    section = Matrix._raw(ambient_dim, len(free), tuple(
        tuple(one if i == j else z for j in free) for i in range(ambient_dim)))
    return projection, section


def extend_basis(sub: Matrix, candidates: Matrix) -> list:
    """Indices of candidate columns that extend the columns of ``sub``.

    Greedy, lowest index first: the chosen candidates together with the
    column span of ``sub`` span ``span(sub) + span(candidates)``.
    """
    stacked = Matrix.hstack([sub, candidates]) if sub.cols else candidates
    _, pivots, _ = rref(stacked)
    base_rank = rank(sub)
    # columns of sub that are dependent never become pivots after
    # independent candidates, so pivots past sub.cols are the extension
    chosen = [p - sub.cols for p in pivots if p >= sub.cols]
    assert len([p for p in pivots if p < sub.cols]) == base_rank
    return chosen


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.rows))
    if x is None or rank(m) != m.rows:
        raise ValueError("matrix is singular")
    return x
