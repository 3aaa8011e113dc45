"""Linear relations in C^m, stored as subspaces of C^m x C^m.

A vector of the ambient space C^{2m} is written ``(x, y)``: coordinates
``0..m-1`` hold the first component and ``m..2m-1`` the second.

Most operations reduce to one trick: put the coordinates to be eliminated
first, bring the spanning rows to reduced echelon form and keep the rows
whose pivot lies past that block.  Those rows span exactly the vectors whose
leading block vanishes.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb
from typing import Sequence

from gmpy2 import mpq

from .errors import (
    DimensionMismatch,
    InternalInvariantError,
    NotAChain,
    NotSingular,
    NotSquare,
    ShapeMismatch,
)
from .matrix import Matrix, kernel_vectors, rref_rows
from .scalars import scalar
from .subspace import Subspace, annihilator, intersect, span

__all__ = [
    "LinearRelation",
    "Chain",
    "from_graph",
    "kernel_rep",
    "range_rep",
    "identity",
    "inverse",
    "scale",
    "shift",
    "op_sum",
    "compose",
    "power",
    "direct_sum",
    "apply_equivalence",
    "kernel",
    "mul",
    "dom",
    "ran",
    "root_manifold",
    "root_manifold_inf",
    "singular_chain_space",
    "is_chain",
    "transform_singular_chain",
    "singular_chains",
]


def _select(rows: list[list], lead: int) -> list[list]:
    """Rows (already in RREF) whose pivot lies at or after column ``lead``."""
    out = []
    for r in rows:
        if not any(r[:lead]):
            out.append(r[lead:])
    return out


def _eliminate(work: list[list], lead: int, width: int) -> list[list]:
    rref_rows(work, width)
    return _select(work, lead)


class LinearRelation:
    """A linear relation ``S ⊆ C^m x C^m``.

    Instances are immutable.  Ladders of kernels, multivalued parts and ranges
    of powers are memoized per instance since every Weyr sequence walks them.
    """

    __slots__ = ("m", "space", "_cache", "_lock")

    def __init__(self, m: int, space: Subspace):
        if space.ambient_dim != 2 * m:
            raise DimensionMismatch("relation space must live in C^{2m}")
        self.m = m
        self.space = space
        self._cache = {}
        self._lock = threading.Lock()

    @classmethod
    def from_pairs(cls, m: int, pairs: Sequence[tuple[Sequence, Sequence]]) -> "LinearRelation":
        return cls(m, span(2 * m, [tuple(x) + tuple(y) for x, y in pairs]))

    @classmethod
    def _from_work(cls, m: int, work: list[list]) -> "LinearRelation":
        return cls(m, Subspace.from_echelon(2 * m, work))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def rows(self) -> tuple:
        return self.space.rows

    def pairs(self) -> list[tuple[tuple, tuple]]:
        m = self.m
        return [(r[:m], r[m:]) for r in self.space.rows]

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.m == other.m and self.space == other.space

    def __hash__(self):
        return hash((self.m, self.space))

    def __repr__(self):
        return f"LinearRelation(m={self.m}, dim={self.dim})"

    def contains(self, x: Sequence, y: Sequence) -> bool:
        return self.space.contains(tuple(x) + tuple(y))

    def _check(self, other: "LinearRelation"):
        if self.m != other.m:
            raise DimensionMismatch(f"relations live in C^{self.m} and C^{other.m}")

    def _memo(self, key, build):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = build()
        with self._lock:
            return self._cache.setdefault(key, value)

    # images and preimages of subspaces under the relation

    def forward(self, V: Subspace) -> Subspace:
        """``S[V] = {y : (x, y) ∈ S for some x ∈ V}``."""
        m = self.m
        z = [mpq(0)] * m
        work = [list(r) for r in self.space.rows]
        work += [[-c for c in v] + z for v in V.rows]
        return Subspace.from_echelon(m, _eliminate(work, m, 2 * m))

    def backward(self, V: Subspace) -> Subspace:
        """``S^{-1}[V] = {x : (x, y) ∈ S for some y ∈ V}``."""
        m = self.m
        z = [mpq(0)] * m
        work = [list(r[m:]) + list(r[:m]) for r in self.space.rows]
        work += [[-c for c in v] + z for v in V.rows]
        return Subspace.from_echelon(m, _eliminate(work, m, 2 * m))

    # ladders: entry k is the subspace for the k-th power

    def _ladder(self, key, start: Subspace, step, k: int) -> list[Subspace]:
        with self._lock:
            lad = self._cache.setdefault(key, [start])
        while len(lad) <= k:
            nxt = step(lad[-1])
            with self._lock:
                if len(lad) <= k:
                    lad.append(nxt)
        return lad

    def kernel_power(self, k: int) -> Subspace:
        """``N(S^k)``."""
        return self._ladder("N", Subspace.zero(self.m), self.backward, k)[k]

    def mul_power(self, k: int) -> Subspace:
        """``mul(S^k)``."""
        return self._ladder("mul", Subspace.zero(self.m), self.forward, k)[k]

    def range_power(self, k: int) -> Subspace:
        """``R(S^k)``."""
        return self._ladder("R", Subspace.full(self.m), self.forward, k)[k]

    def dom_power(self, k: int) -> Subspace:
        """``dom(S^k)``."""
        return self._ladder("dom", Subspace.full(self.m), self.backward, k)[k]

    def _stable(self, getter) -> tuple[Subspace, int]:
        # nested ladders stabilize as soon as two consecutive terms agree
        k = 0
        while True:
            a, b = getter(k), getter(k + 1)
            if a == b:
                return a, k
            k += 1

    def shifted(self, lam) -> "LinearRelation":
        lam = scalar(lam)
        if not lam:
            return self
        return self._memo(("shift", lam), lambda: _shift(self, lam))


def _shift(S: LinearRelation, lam) -> LinearRelation:
    m = S.m
    work = [list(r[:m]) + [r[m + i] - lam * r[i] for i in range(m)] for r in S.space.rows]
    return LinearRelation._from_work(m, work)


@dataclass(frozen=True)
class Chain:
    """Sequence of pairs ``(x_k, x_{k-1}), ..., (x_1, x_0)``."""

    m: int
    pairs: tuple

    @classmethod
    def from_vectors(cls, m: int, vectors: Sequence[Sequence]) -> "Chain":
        """Chain ``(v_0, v_1), (v_1, v_2), ...`` through consecutive vectors."""
        vs = [tuple(scalar(c) for c in v) for v in vectors]
        return cls(m, tuple((vs[i], vs[i + 1]) for i in range(len(vs) - 1)))

    def links(self) -> bool:
        return all(self.pairs[i][1] == self.pairs[i + 1][0] for i in range(len(self.pairs) - 1))

    def is_singular(self) -> bool:
        if not self.pairs:
            return False
        return not any(self.pairs[0][0]) and not any(self.pairs[-1][1])

    def is_trivial(self) -> bool:
        return not any(any(x) or any(y) for x, y in self.pairs)


def _check_square(A: Matrix):
    if A.rows != A.cols:
        raise NotSquare("expected a square matrix")


def from_graph(A: Matrix) -> LinearRelation:
    """Graph ``{(x, Ax)}`` of a square matrix."""
    _check_square(A)
    m = A.rows
    z, o = mpq(0), mpq(1)
    # rows (e_j, A e_j) are already in reduced echelon form
    rows = tuple(tuple(o if i == j else z for i in range(m)) + A.column(j) for j in range(m))
    return LinearRelation(m, Subspace(2 * m, rows, tuple(range(m))))


def identity(m: int) -> LinearRelation:
    return from_graph(Matrix.identity(m))


def _check_pair(E: Matrix, F: Matrix):
    if E.shape != F.shape:
        raise ShapeMismatch(f"E is {E.rows}x{E.cols} but F is {F.rows}x{F.cols}")


def kernel_rep(E: Matrix, F: Matrix) -> LinearRelation:
    """``{(x, y) : Fx = Ey}``, the kernel of ``[F, -E]``."""
    _check_pair(E, F)
    m = E.cols
    system = [list(rf) + [-e for e in re] for re, rf in zip(E.data, F.data)]
    vecs = kernel_vectors(system, 2 * m)
    return LinearRelation._from_work(m, [list(v) for v in vecs])


def range_rep(E: Matrix, F: Matrix) -> LinearRelation:
    """``{(Ex, Fx)}``, the column span of ``[E; F]``."""
    _check_pair(E, F)
    n = E.rows
    cols = [E.column(j) + F.column(j) for j in range(E.cols)]
    return LinearRelation._from_work(n, [list(c) for c in cols])


def inverse(S: LinearRelation) -> LinearRelation:
    m = S.m
    return S._memo("inverse", lambda: LinearRelation._from_work(
        m, [list(r[m:]) + list(r[:m]) for r in S.space.rows]))


def scale(S: LinearRelation, lam) -> LinearRelation:
    """``λS = {(x, λy)}``; for ``λ = 0`` this is ``dom S x {0}``."""
    lam = scalar(lam)
    m = S.m
    work = [list(r[:m]) + [lam * c for c in r[m:]] for r in S.space.rows]
    return LinearRelation._from_work(m, work)


def shift(S: LinearRelation, lam) -> LinearRelation:
    """``S - λ = {(x, y - λx)}``."""
    return S.shifted(lam)


def kernel(S: LinearRelation) -> Subspace:
    return S.kernel_power(1)


def mul(S: LinearRelation) -> Subspace:
    return S.mul_power(1)


def dom(S: LinearRelation) -> Subspace:
    return S.space.project(range(S.m))


def ran(S: LinearRelation) -> Subspace:
    return S.space.project(range(S.m, 2 * S.m))


def compose(S1: LinearRelation, S2: LinearRelation) -> LinearRelation:
    """``S1 S2 = {(x, z) : (x, y) ∈ S2, (y, z) ∈ S1}``."""
    S1._check(S2)
    m = S1.m
    z = [mpq(0)] * m
    # coordinates (y, x, z); vectors with y = 0 glue the two relations
    work = [list(r[m:]) + list(r[:m]) + z for r in S2.space.rows]
    work += [[-c for c in r[:m]] + z + list(r[m:]) for r in S1.space.rows]
    return LinearRelation._from_work(m, _eliminate(work, m, 3 * m))


def op_sum(S1: LinearRelation, S2: LinearRelation) -> LinearRelation:
    """``S1 + S2 = {(x, y + z) : (x, y) ∈ S1, (x, z) ∈ S2}``."""
    S1._check(S2)
    m = S1.m
    z = [mpq(0)] * m
    work = [list(r[:m]) + list(r[:m]) + list(r[m:]) for r in S1.space.rows]
    work += [[-c for c in r[:m]] + z + list(r[m:]) for r in S2.space.rows]
    return LinearRelation._from_work(m, _eliminate(work, m, 3 * m))


def power(S: LinearRelation, k: int) -> LinearRelation:
    """``S^k`` with ``S^0`` the identity; memoized per relation."""
    if k < 0:
        raise ValueError("power must be nonnegative")

    def build(j):
        if j == 0:
            return identity(S.m)
        if j == 1:
            return S
        return compose(S, power(S, j - 1))

    return S._memo(("power", k), lambda: build(k))


def direct_sum(S1: LinearRelation, S2: LinearRelation) -> LinearRelation:
    """Embed ``S1`` and ``S2`` into complementary coordinate blocks of C^{m1+m2}."""
    m1, m2 = S1.m, S2.m
    z1, z2 = [mpq(0)] * m1, [mpq(0)] * m2
    work = [list(r[:m1]) + z2 + list(r[m1:]) + z2 for r in S1.space.rows]
    work += [z1 + list(r[:m2]) + z1 + list(r[m2:]) for r in S2.space.rows]
    return LinearRelation._from_work(m1 + m2, work)


def apply_equivalence(S: LinearRelation, T: Matrix) -> LinearRelation:
    """``{(Tx, Ty) : (x, y) ∈ S}`` for invertible ``T``."""
    if T.rows != T.cols or T.rows != S.m:
        raise DimensionMismatch("transform must be m x m")
    T.inverse()  # raises SingularTransform
    m = S.m
    work = [list(T.apply(r[:m])) + list(T.apply(r[m:])) for r in S.space.rows]
    return LinearRelation._from_work(m, work)


def root_manifold(S: LinearRelation, lam) -> Subspace:
    """``R_λ(S)``, the union of ``N((S-λ)^k)``."""
    T = S.shifted(lam)
    return T._stable(T.kernel_power)[0]


def root_manifold_inf(S: LinearRelation) -> Subspace:
    return S._stable(S.mul_power)[0]


def singular_chain_space(S: LinearRelation) -> Subspace:
    """``R_c(S) = R_0(S) ∩ R_∞(S)``."""
    return S._memo("Rc", lambda: intersect(root_manifold(S, 0), root_manifold_inf(S)))


def is_chain(S: LinearRelation, chain: Chain) -> bool:
    if chain.m != S.m:
        raise DimensionMismatch("chain and relation dimensions differ")
    return chain.links() and all(S.contains(x, y) for x, y in chain.pairs)


def _singular_vectors(chain: Chain) -> list[tuple]:
    """``[x_1, ..., x_s]`` from ``(0, x_1), (x_1, x_2), ..., (x_s, 0)``."""
    return [chain.pairs[i][1] for i in range(len(chain.pairs) - 1)]


def transform_singular_chain(S: LinearRelation, chain: Chain, lam) -> Chain:
    """Carry a singular chain of ``S`` to a singular chain of ``S - λ``.

    With the chain written ``(0, x_1), (x_1, x_2), ..., (x_s, 0)`` the new
    vectors are ``z_j = sum_{i<=j} C(s-i, j-i) λ^(j-i) x_i`` and the result is
    ``(0, z_1), (z_1, z_2), ..., (z_s, 0)``.  Numbering from the start of the
    chain is what makes the binomial weights satisfy Pascal's rule along each
    link.  The output is checked for membership in ``S - λ``.
    """
    if not chain.is_singular():
        raise NotSingular("chain must start and end at 0")
    if not is_chain(S, chain):
        raise NotAChain("pairs do not form a chain in the relation")
    lam = scalar(lam)
    m = S.m
    xs = _singular_vectors(chain)
    s = len(xs)
    zs = []
    for j in range(1, s + 1):
        acc = [mpq(0)] * m
        for i in range(1, j + 1):
            c = comb(s - i, j - i) * lam ** (j - i)
            if c:
                acc = [a + c * b for a, b in zip(acc, xs[i - 1])]
        zs.append(tuple(acc))
    zero = tuple(mpq(0) for _ in range(m))
    out = Chain.from_vectors(m, [zero] + zs + [zero])
    if not is_chain(S.shifted(lam), out):
        raise InternalInvariantError("transformed chain is not a chain in S - λ")
    return out


def singular_chains(S: LinearRelation, s: int) -> list[Chain]:
    """Basis of the space of singular chains ``(0, x_1), ..., (x_s, 0)`` in ``S``."""
    m = S.m
    ann = annihilator(S.space).rows
    n = s * m
    system = []
    # vector layout: x_1, ..., x_s; pair (a, b) in S iff f(a, b) = 0 for f in ann
    links = [(None, 0)] + [(j, j + 1) for j in range(s - 1)] + [(s - 1, None)]
    for a, b in links:
        for f in ann:
            row = [mpq(0)] * n
            if a is not None:
                row[a * m:(a + 1) * m] = f[:m]
            if b is not None:
                row[b * m:(b + 1) * m] = f[m:]
            system.append(row)
    sols = kernel_vectors(system, n)
    zero = tuple(mpq(0) for _ in range(m))
    out = []
    for v in sols:
        xs = [tuple(v[i * m:(i + 1) * m]) for i in range(s)]
        out.append(Chain.from_vectors(m, [zero] + xs + [zero]))
    return out
