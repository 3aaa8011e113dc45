"""Partitions and the Weyr characteristic (W, A, B, C) of a linear relation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InternalInvariantError, UnresolvedEigenvalues
from .matrix import Matrix
from .poly import Poly, PolyMatrix, multiplicity, rational_roots, smith_normal_form
from .relation import LinearRelation, dom, root_manifold, singular_chain_space
from .scalars import scalar, sort_key

__all__ = [
    "Partition",
    "conjugate",
    "multi_index_add",
    "WeyrCharacteristic",
    "discover_eigenvalues",
    "proper_finite_eigenvalues",
    "weyr_at",
    "weyr_inf",
    "weyr_singular",
    "weyr_multishift",
    "weyr_characteristic",
    "strictly_equivalent_relations",
]


class Partition(tuple):
    """Non-increasing tuple of positive integers; zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        vals = tuple(int(p) for p in parts)
        if any(p < 0 for p in vals):
            raise ValueError(f"negative entry in {vals}")
        vals = tuple(p for p in vals if p)
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"{vals} is not non-increasing")
        return super().__new__(cls, vals)

    @property
    def size(self) -> int:
        return sum(self)

    def first(self) -> int:
        return self[0] if self else 0

    def at(self, k: int) -> int:
        """1-based entry with zeros past the end."""
        return self[k - 1] if 0 < k <= len(self) else 0

    def tail(self, drop: int) -> "Partition":
        return Partition(self[drop:])

    def __repr__(self):
        return f"Partition({tuple(self)})"


def conjugate(p: Sequence[int]) -> Partition:
    """Transpose of the Young diagram: ``q_k = #{i : p_i >= k}``."""
    p = Partition(p)
    if not p:
        return Partition()
    return Partition(sum(1 for x in p if x >= k) for k in range(1, p[0] + 1))


def multi_index_add(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Entrywise sum, keeping the tail of the longer sequence."""
    if len(a) > len(b):
        a, b = b, a
    out = tuple(x + y for x, y in zip(a, b)) + tuple(b[len(a):])
    try:
        return Partition(out)
    except ValueError:
        return out


def _sequence(dims: list[int]) -> list[int]:
    return [dims[k] - dims[k - 1] for k in range(1, len(dims))]


def _finish(seq: list[int], what: str) -> Partition:
    try:
        return Partition(seq)
    except ValueError as exc:
        raise InternalInvariantError(f"{what} sequence {seq} is not a partition") from exc


def weyr_at(S: LinearRelation, lam) -> Partition:
    """``W_k(λ) = dim (N((S-λ)^k) + R_c) / (N((S-λ)^{k-1}) + R_c)``."""
    Rc = singular_chain_space(S)
    T = S.shifted(lam)
    dims = [Rc.dim]
    k = 1
    while True:
        N = T.kernel_power(k)
        dims.append((N + Rc).dim)
        if N == T.kernel_power(k - 1):
            break
        k += 1
    return _finish(_sequence(dims), "W")


def weyr_inf(S: LinearRelation) -> Partition:
    """``A_k = dim (mul(S^k) + R_c) / (mul(S^{k-1}) + R_c)``."""
    Rc = singular_chain_space(S)
    dims = [Rc.dim]
    k = 1
    while True:
        M = S.mul_power(k)
        dims.append((M + Rc).dim)
        if M == S.mul_power(k - 1):
            break
        k += 1
    return _finish(_sequence(dims), "A")


def weyr_singular(S: LinearRelation) -> Partition:
    """``B_k = dim (N(S^k) ∩ R_c) / (N(S^{k-1}) ∩ R_c)``."""
    Rc = singular_chain_space(S)
    dims = [0]
    k = 1
    while True:
        N = S.kernel_power(k)
        dims.append((N & Rc).dim)
        if N == S.kernel_power(k - 1):
            break
        k += 1
    return _finish(_sequence(dims), "B")


def weyr_multishift(S: LinearRelation) -> Partition:
    """Multi-shift sequence ``C``.

    ``C_1 = dim (R(S) + dom S) / (R(S) + R_0)``; for ``k >= 2`` the entry is
    ``dim (R(S^k) + R_0) / (R(S^{k+1}) + R_0)``, the index under which the
    canonical-form round trips hold.
    """
    R0 = root_manifold(S, 0)
    R1 = S.range_power(1)
    seq = [(R1 + dom(S)).dim - (R1 + R0).dim]
    k = 2
    while True:
        a, b = S.range_power(k), S.range_power(k + 1)
        seq.append((a + R0).dim - (b + R0).dim)
        if a == b:
            break
        k += 1
    return _finish(seq, "C")


def discover_eigenvalues(P: PolyMatrix | None, extra: Iterable = (),
                         factors: Sequence[Poly] | None = None) -> tuple[list, tuple[Poly, ...]]:
    """Candidate eigenvalues of ``P`` from its Smith invariant factors.

    Returns the rational roots together with every supplied extra value that
    is a root, and the non-constant residual factors left after dividing
    those roots out.  Precomputed ``factors`` may be passed instead of ``P``.
    """
    extra = [scalar(x) for x in extra]
    if factors is None:
        _, factors = smith_normal_form(P)
    found = set()
    unresolved = []
    for f in factors:
        if f.degree < 1:
            continue
        roots, res = rational_roots(f)
        found.update(roots)
        for lam in extra:
            k, res = multiplicity(res, lam)
            if k:
                found.add(lam)
        if res.degree >= 1:
            unresolved.append(res.monic())
    return sorted(found, key=sort_key), tuple(unresolved)


def relation_pencil(S: LinearRelation) -> PolyMatrix:
    """``sX - Y`` where the columns of ``[X; Y]`` span ``S``."""
    m = S.m
    X = Matrix.from_columns([r[:m] for r in S.rows], m)
    Y = Matrix.from_columns([r[m:] for r in S.rows], m)
    return PolyMatrix.from_pencil(X, Y)


def is_proper(S: LinearRelation, lam) -> bool:
    """``W_1(λ) > 0``, i.e. ``N(S-λ)`` is not inside ``R_c(S)``."""
    return not S.shifted(lam).kernel_power(1).issubset(singular_chain_space(S))


def proper_finite_eigenvalues(S: LinearRelation, extra: Iterable = ()) -> tuple[list, tuple[Poly, ...]]:
    if S.dim == 0:
        return [], ()
    cands, unresolved = discover_eigenvalues(relation_pencil(S), extra)
    extra_set = [scalar(x) for x in extra]
    for lam in extra_set:
        if lam not in cands:
            cands.append(lam)
    eigs = sorted({lam for lam in cands if is_proper(S, lam)}, key=sort_key)
    return eigs, unresolved


@dataclass(frozen=True, eq=False)
class WeyrCharacteristic:
    W: dict
    A: Partition
    B: Partition
    C: Partition
    unresolved_factors: tuple = ()
    degenerate_spectrum: bool = field(default=False)

    def w(self, lam) -> Partition:
        return self.W.get(scalar(lam), Partition())

    def eigenvalues(self) -> list:
        return sorted(self.W, key=sort_key)

    def is_resolved(self) -> bool:
        return not self.unresolved_factors

    def __eq__(self, other):
        if not isinstance(other, WeyrCharacteristic):
            return NotImplemented
        return (self.W == other.W and self.A == other.A and self.B == other.B
                and self.C == other.C and self.unresolved_factors == other.unresolved_factors)

    def __repr__(self):
        w = ", ".join(f"{lam}: {tuple(p)}" for lam, p in sorted(self.W.items(), key=lambda t: sort_key(t[0])))
        return (f"WeyrCharacteristic(W={{{w}}}, A={tuple(self.A)}, B={tuple(self.B)}, "
                f"C={tuple(self.C)}, unresolved={[str(p) for p in self.unresolved_factors]})")


def weyr_characteristic(S: LinearRelation, extra_eigs: Iterable = ()) -> WeyrCharacteristic:
    eigs, unresolved = proper_finite_eigenvalues(S, extra_eigs)
    W = {}
    for lam in eigs:
        W[lam] = weyr_at(S, lam)
    B = weyr_singular(S)
    return WeyrCharacteristic(
        W=W,
        A=weyr_inf(S),
        B=B,
        C=weyr_multishift(S),
        unresolved_factors=unresolved,
        degenerate_spectrum=not singular_chain_space(S).is_zero(),
    )


def strictly_equivalent_relations(S1: LinearRelation, S2: LinearRelation, extra_eigs: Iterable = ()) -> bool:
    """Decide strict equivalence by comparing Weyr characteristics."""
    if S1.m != S2.m:
        raise DimensionMismatch("relations live in spaces of different dimension")
    extra = list(extra_eigs)
    w1 = weyr_characteristic(S1, extra)
    w2 = weyr_characteristic(S2, extra)
    for w in (w1, w2):
        if w.unresolved_factors:
            raise UnresolvedEigenvalues(
                "eigenvalues outside the rationals; supply them as extra eigenvalues",
                w.unresolved_factors)
    return w1 == w2
