"""Dense exact matrices and Gauss-Jordan elimination."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, NotSquare, SingularTransform
from .scalars import Gaussian, conj, scalar

__all__ = [
    "Matrix",
    "rref",
    "rref_rows",
    "kernel_basis",
    "rank",
]


def rref_rows(rows: list[list], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Zero rows are removed from the list.  Returns the pivot columns.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and not rows[p][c]:
            p += 1
        if p == nrows:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    pj = prow[j]
                    if pj:
                        row[j] = row[j] - f * pj
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


@dataclass(frozen=True)
class Matrix:
    """Immutable ``rows x cols`` matrix of exact scalars.

    ``data`` holds the rows as tuples; :attr:`entries` is the flat row-major
    view used for serialization.
    """

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(scalar(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence) -> "Matrix":
        if len(entries) != rows * cols:
            raise DimensionMismatch("entries length must equal rows*cols")
        vals = [scalar(x) for x in entries]
        return cls(rows, cols, tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [tuple(scalar(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise DimensionMismatch("column length mismatch")
        return cls(nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = mpq(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        z, o = mpq(0), mpq(1)
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        z = mpq(0)
        vals = [scalar(v) for v in values]
        return cls(n, n, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(tuple(r[j] for r in self.data) for j in range(self.cols)))

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        t = self.T
        return Matrix(t.rows, t.cols, tuple(tuple(conj(x) for x in r) for r in t.data))

    def conjugate(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(conj(x) for x in r) for r in self.data))

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        z = mpq(0)
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for col in ocols:
                acc = z
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        z = mpq(0)
        out = []
        for r in self.data:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def is_real(self) -> bool:
        return not any(type(x) is Gaussian for r in self.data for x in r)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise NotSquare("only square matrices are invertible")
        n = self.rows
        work = [list(r) + [mpq(1) if i == j else mpq(0) for j in range(n)]
                for i, r in enumerate(self.data)]
        piv = rref_rows(work, 2 * n)
        if piv[:n] != list(range(n)) or len(work) < n:
            raise SingularTransform("matrix is singular")
        return Matrix(n, n, tuple(tuple(r[n:]) for r in work))

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise DimensionMismatch("hstack needs equal row counts")
        data = tuple(tuple(x for m in mats for x in m.data[i]) for i in range(self.rows))
        return Matrix(self.rows, sum(m.cols for m in mats), data)

    def vstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix(sum(m.rows for m in mats), self.cols, tuple(r for m in mats for r in m.data))

    @staticmethod
    def block_diag(*blocks: "Matrix") -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        z = mpq(0)
        out = []
        off = 0
        for b in blocks:
            for r in b.data:
                out.append((z,) * off + tuple(r) + (z,) * (cols - off - b.cols))
            off += b.cols
        return Matrix(rows, cols, tuple(out))

    def __str__(self):
        from .scalars import format_scalar

        cells = [[format_scalar(x) for x in r] for r in self.data]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells) or "[]"


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form of ``M``, its pivot columns and its rank.

    The returned matrix keeps the shape of ``M`` (zero rows at the bottom).

    >>> R, piv, r = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    >>> piv, r
    ((0,), 1)
    """
    work = [list(r) for r in M.data]
    piv = rref_rows(work, M.cols)
    z = mpq(0)
    data = tuple(tuple(r) for r in work) + tuple((z,) * M.cols for _ in range(M.rows - len(work)))
    return Matrix(M.rows, M.cols, data), tuple(piv), len(piv)


def rank(M: Matrix) -> int:
    work = [list(r) for r in M.data]
    return len(rref_rows(work, M.cols))


def kernel_vectors(rows: list[list], ncols: int) -> list[tuple]:
    """Basis of ``{x : A x = 0}`` for ``A`` given by ``rows``; ``rows`` is consumed."""
    piv = rref_rows(rows, ncols)
    pivset = set(piv)
    z, one = mpq(0), mpq(1)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [z] * ncols
        v[f] = one
        for r, p in zip(rows, piv):
            if r[f]:
                v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def kernel_basis(M: Matrix) -> Matrix:
    """Columns spanning the null space of ``M`` (``cols - rank`` of them)."""
    vecs = kernel_vectors([list(r) for r in M.data], M.cols)
    return Matrix.from_columns(vecs, M.cols)
