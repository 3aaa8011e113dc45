"""Subspaces of C^d in canonical echelon form."""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, NotNested
from .matrix import Matrix, kernel_vectors, rref_rows
from .scalars import conj, scalar

__all__ = [
    "Subspace",
    "span",
    "subspace_sum",
    "intersect",
    "quotient_dim",
    "image",
    "preimage",
    "annihilator",
    "orthogonal_complement",
]


class Subspace:
    """A linear subspace of C^d.

    The basis is kept as the rows of a reduced row echelon matrix, which is
    the transpose of the reduced column echelon basis exposed by
    :attr:`basis`.  Two subspaces are equal exactly when these rows agree.
    """

    __slots__ = ("ambient_dim", "rows", "pivots", "_hash")

    def __init__(self, ambient_dim: int, rows: tuple, pivots: tuple):
        # trusted constructor: rows must already be in RREF
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots
        self._hash = None

    @classmethod
    def from_echelon(cls, ambient_dim: int, work: list[list]) -> "Subspace":
        piv = rref_rows(work, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in work), tuple(piv))

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls(d, (), ())

    @classmethod
    def full(cls, d: int) -> "Subspace":
        z, o = mpq(0), mpq(1)
        return cls(d, tuple(tuple(o if i == j else z for j in range(d)) for i in range(d)),
                   tuple(range(d)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        """``ambient_dim x dim`` matrix whose columns are the canonical basis."""
        return Matrix.from_columns(self.rows, self.ambient_dim)

    def vectors(self) -> list[tuple]:
        return list(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match the ambient dimension")
        # reduce v against the echelon rows; zero residue means membership
        r = [scalar(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = r[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        r[j] = r[j] - c * row[j]
        return not any(r)

    def __contains__(self, v):
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(r) for r in self.rows)

    __le__ = issubset

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def project(self, coords: Sequence[int]) -> "Subspace":
        """Coordinate projection onto ``coords`` (in that order)."""
        return Subspace.from_echelon(len(coords), [[r[c] for c in coords] for r in self.rows])


def span(ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
    """Smallest subspace of C^ambient_dim containing ``vectors``."""
    work = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch("vector length does not match the ambient dimension")
        work.append([scalar(x) for x in v])
    return Subspace.from_echelon(ambient_dim, work)


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    U._check(V)
    if V.is_zero() or U.is_full():
        return U
    if U.is_zero() or V.is_full():
        return V
    return Subspace.from_echelon(U.ambient_dim, [list(r) for r in U.rows + V.rows])


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V from the kernel of ``[B_U | -B_V]``."""
    U._check(V)
    if U.is_zero() or V.is_full():
        return U
    if V.is_zero() or U.is_full():
        return V
    d, p = U.ambient_dim, U.dim
    # coefficient vectors (a, b) with sum a_i u_i = sum b_j v_j
    system = [[U.rows[i][c] for i in range(p)] + [-V.rows[j][c] for j in range(V.dim)]
              for c in range(d)]
    coeffs = kernel_vectors(system, p + V.dim)
    z = mpq(0)
    vecs = []
    for a in coeffs:
        v = [z] * d
        for i in range(p):
            if a[i]:
                row = U.rows[i]
                for c in range(d):
                    if row[c]:
                        v[c] = v[c] + a[i] * row[c]
        vecs.append(v)
    W = Subspace.from_echelon(d, vecs)
    return W


def quotient_dim(U: Subspace, V: Subspace) -> int:
    """``dim U/V`` for ``V ⊆ U``."""
    if not V.issubset(U):
        raise NotNested("second subspace is not contained in the first")
    return U.dim - V.dim


def image(M: Matrix, U: Subspace) -> Subspace:
    if M.cols != U.ambient_dim:
        raise DimensionMismatch("matrix columns must equal the ambient dimension")
    return Subspace.from_echelon(M.rows, [list(M.apply(r)) for r in U.rows])


def annihilator(U: Subspace) -> Subspace:
    """Functionals ``f`` with ``sum f_i u_i = 0`` for all ``u`` in ``U`` (bilinear)."""
    if U.is_zero():
        return Subspace.full(U.ambient_dim)
    vecs = kernel_vectors([list(r) for r in U.rows], U.ambient_dim)
    return Subspace.from_echelon(U.ambient_dim, [list(v) for v in vecs])


def orthogonal_complement(U: Subspace) -> Subspace:
    """Complement with respect to the sesquilinear form ``<x, y> = sum x_i conj(y_i)``."""
    A = annihilator(U)
    return Subspace.from_echelon(U.ambient_dim, [[conj(x) for x in r] for r in A.rows])


def preimage(M: Matrix, U: Subspace) -> Subspace:
    """``{x : Mx ∈ U}``."""
    if M.rows != U.ambient_dim:
        raise DimensionMismatch("matrix rows must equal the ambient dimension")
    ann = annihilator(U)
    constraints = [list(M.T.apply(f)) for f in ann.rows]
    vecs = kernel_vectors(constraints, M.cols)
    return Subspace.from_echelon(M.cols, [list(v) for v in vecs])
