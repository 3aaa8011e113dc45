"""Matrix pencils ``sE - F``, Kronecker blocks and the relation correspondence."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from gmpy2 import mpq

from .errors import (
    InconsistentInvariants,
    Infeasible,
    InternalInvariantError,
    ShapeMismatch,
    UnresolvedEigenvalues,
)
from .matrix import Matrix
from .poly import Poly, PolyMatrix, multiplicity, smith_normal_form
from .relation import LinearRelation, kernel_rep, range_rep
from .scalars import scalar, sort_key
from .weyr import (
    Partition,
    WeyrCharacteristic,
    conjugate,
    discover_eigenvalues,
    weyr_at,
    weyr_inf,
    weyr_multishift,
    weyr_singular,
)

__all__ = [
    "Pencil",
    "KroneckerInvariants",
    "PencilWeyr",
    "build_kronecker",
    "pencil_weyr_from_invariants",
    "invariants_from_weyr",
    "pencil_eigenvalues",
    "pencil_weyr_via_kernel",
    "pencil_weyr_via_range",
    "pencil_weyr",
    "partial_pencil_weyr",
    "invariant_factors",
    "kernel_weyr_expected",
    "range_weyr_expected",
    "minimal_rows_kernel",
    "minimal_rows_range",
    "minimal_columns_range",
    "strictly_equivalent_pencils",
    "pencil_structure",
    "PencilStructure",
    "apply_pencil_equivalence",
    "random_invariants",
    "random_invertible",
]


@dataclass(frozen=True)
class Pencil:
    """The pencil ``sE - F`` with ``E, F`` of size ``n x m``."""

    E: Matrix
    F: Matrix

    def __post_init__(self):
        if self.E.shape != self.F.shape:
            raise ShapeMismatch(f"E is {self.E.shape} but F is {self.F.shape}")

    @classmethod
    def from_rows(cls, E, F) -> "Pencil":
        return cls(Matrix.from_rows(E), Matrix.from_rows(F))

    @property
    def n(self) -> int:
        return self.E.rows

    @property
    def m(self) -> int:
        return self.E.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.E.shape

    def poly(self) -> PolyMatrix:
        return PolyMatrix.from_pencil(self.E, self.F)

    def dual(self) -> PolyMatrix:
        """``sF - E``, whose eigenvalue 0 is the eigenvalue ∞ of the pencil."""
        return PolyMatrix.from_pencil(self.F, self.E)

    def transpose(self) -> "Pencil":
        return Pencil(self.E.T, self.F.T)

    def __add__(self, other: "Pencil") -> "Pencil":
        return Pencil(self.E + other.E, self.F + other.F)

    def kernel_rep(self) -> LinearRelation:
        return kernel_rep(self.E, self.F)

    def range_rep(self) -> LinearRelation:
        return range_rep(self.E, self.F)


def _clean_map(d) -> dict:
    out = {}
    for lam, p in d.items():
        p = Partition(p)
        if p:
            out[scalar(lam)] = p
    return dict(sorted(out.items(), key=lambda t: sort_key(t[0])))


@dataclass(frozen=True, eq=False)
class KroneckerInvariants:
    """Segre data at finite eigenvalues, ``alpha`` at ∞, and the ``beta``/``gamma`` indices."""

    finite: dict = field(default_factory=dict)
    alpha: Partition = Partition()
    beta: Partition = Partition()
    gamma: Partition = Partition()

    def __post_init__(self):
        object.__setattr__(self, "finite", _clean_map(self.finite))
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, Partition(getattr(self, name)))

    def __eq__(self, other):
        if not isinstance(other, KroneckerInvariants):
            return NotImplemented
        return (self.finite == other.finite and self.alpha == other.alpha
                and self.beta == other.beta and self.gamma == other.gamma)

    def shape(self) -> tuple[int, int]:
        fin = sum(p.size for p in self.finite.values())
        a = self.alpha.size
        n = fin + a + sum(k - 1 for k in self.beta) + self.gamma.size
        m = fin + a + self.beta.size + sum(k - 1 for k in self.gamma)
        return n, m

    def __repr__(self):
        fin = {str(k): tuple(v) for k, v in self.finite.items()}
        return (f"KroneckerInvariants(finite={fin}, alpha={tuple(self.alpha)}, "
                f"beta={tuple(self.beta)}, gamma={tuple(self.gamma)})")


@dataclass(frozen=True, eq=False)
class PencilWeyr:
    w: dict = field(default_factory=dict)
    a: Partition = Partition()
    b: Partition = Partition()
    c: Partition = Partition()

    def __post_init__(self):
        object.__setattr__(self, "w", _clean_map(self.w))
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Partition(getattr(self, name)))

    def __eq__(self, other):
        if not isinstance(other, PencilWeyr):
            return NotImplemented
        return self.w == other.w and self.a == other.a and self.b == other.b and self.c == other.c

    def w_at(self, lam) -> Partition:
        return self.w.get(scalar(lam), Partition())

    def sizes(self) -> dict:
        return {"w": sum(p.size for p in self.w.values()), "a": self.a.size,
                "b": self.b.size, "c": self.c.size}

    def __repr__(self):
        w = {str(k): tuple(v) for k, v in self.w.items()}
        return f"PencilWeyr(w={w}, a={tuple(self.a)}, b={tuple(self.b)}, c={tuple(self.c)})"


def _jordan(lam, k: int) -> Matrix:
    lam = scalar(lam)
    z, o = mpq(0), mpq(1)
    return Matrix(k, k, tuple(tuple(lam if i == j else (o if j == i + 1 else z) for j in range(k))
                              for i in range(k)))


def _nilpotent(k: int) -> Matrix:
    """``N_k``: ones on the subdiagonal."""
    z, o = mpq(0), mpq(1)
    return Matrix(k, k, tuple(tuple(o if i == j + 1 else z for j in range(k)) for i in range(k)))


def _shift_pair(k: int) -> tuple[Matrix, Matrix]:
    """``K_k = [I | 0]`` and ``L_k = [0 | I]``, both ``(k-1) x k``."""
    z, o = mpq(0), mpq(1)
    K = Matrix(k - 1, k, tuple(tuple(o if j == i else z for j in range(k)) for i in range(k - 1)))
    L = Matrix(k - 1, k, tuple(tuple(o if j == i + 1 else z for j in range(k)) for i in range(k - 1)))
    return K, L


def build_kronecker(inv: KroneckerInvariants) -> Pencil:
    """Block diagonal pencil in Kronecker form.

    Blocks come in the order Jordan, infinite, ``beta``, ``gamma``; a unit
    ``beta`` part is a zero column and a unit ``gamma`` part a zero row.
    """
    Es, Fs = [], []
    for lam, segre in inv.finite.items():
        for k in segre:
            Es.append(Matrix.identity(k))
            Fs.append(_jordan(lam, k))
    for k in inv.alpha:
        Es.append(_nilpotent(k))
        Fs.append(Matrix.identity(k))
    for k in inv.beta:
        K, L = _shift_pair(k)
        Es.append(K)
        Fs.append(L)
    for k in inv.gamma:
        K, L = _shift_pair(k)
        Es.append(K.T)
        Fs.append(L.T)
    P = Pencil(Matrix.block_diag(*Es), Matrix.block_diag(*Fs))
    if P.shape != inv.shape():
        raise InternalInvariantError("built pencil violates the size bookkeeping")
    return P


def pencil_weyr_from_invariants(inv: KroneckerInvariants) -> PencilWeyr:
    return PencilWeyr(
        w={lam: conjugate(p) for lam, p in inv.finite.items()},
        a=conjugate(inv.alpha),
        b=conjugate(inv.beta),
        c=conjugate(inv.gamma),
    )


def invariants_from_weyr(pw: PencilWeyr) -> KroneckerInvariants:
    return KroneckerInvariants(
        finite={lam: conjugate(p) for lam, p in pw.w.items()},
        alpha=conjugate(pw.a),
        beta=conjugate(pw.b),
        gamma=conjugate(pw.c),
    )


def kernel_weyr_expected(pw: PencilWeyr) -> tuple:
    """Relation-level ``(W, A, B, C)`` the kernel representation must have."""
    return pw.w, pw.a, pw.b, pw.c.tail(2)


def range_weyr_expected(pw: PencilWeyr) -> tuple:
    return pw.w, pw.a, pw.b.tail(1), pw.c.tail(1)


@lru_cache(maxsize=512)
def invariant_factors(P: Pencil) -> tuple[Poly, ...]:
    """Smith invariant factors of ``sE - F`` (memoized per pencil value)."""
    return smith_normal_form(P.poly())[1]


@lru_cache(maxsize=512)
def dual_invariant_factors(P: Pencil) -> tuple[Poly, ...]:
    return smith_normal_form(P.dual())[1]


def pencil_eigenvalues(P: Pencil, extra: Iterable = ()) -> tuple[list, bool, tuple[Poly, ...]]:
    """Finite eigenvalues, whether ∞ is an eigenvalue, and unresolved factors."""
    finite, unresolved = discover_eigenvalues(None, extra, invariant_factors(P))
    has_inf = any(f.degree >= 1 and not f(mpq(0)) for f in dual_invariant_factors(P))
    return finite, has_inf, unresolved


def _alpha(P: Pencil) -> Partition:
    """Infinite elementary divisor degrees from the Smith form of ``sF - E``."""
    dual = dual_invariant_factors(P)
    return Partition(sorted((multiplicity(f, mpq(0))[0] for f in dual), reverse=True))


def _finite_part(S: LinearRelation, eigs: list, total: int) -> dict:
    W = {}
    for lam in eigs:
        p = weyr_at(S, lam)
        if p:
            W[lam] = p
    if sum(p.size for p in W.values()) != total:
        raise InconsistentInvariants("finite Weyr data disagrees with the Smith form degree")
    return W


def _partition(seq, what: str) -> Partition:
    if any(x < 0 for x in seq):
        raise InconsistentInvariants(f"reconstructed {what} {tuple(seq)} has a negative entry")
    try:
        return Partition(seq)
    except ValueError as exc:
        raise InconsistentInvariants(f"reconstructed {what} {tuple(seq)} is not non-increasing") from exc


def _kernel_completion(n: int, m: int, wsize: int, A, B, C) -> Partition:
    c2 = m - wsize - A.size - B.size - C.size
    c1 = n - m + B.first()
    return _partition((c1, c2) + tuple(C), "c")


def _range_completion(n: int, m: int, wsize: int, A, B, C) -> tuple[Partition, Partition]:
    rest = wsize + A.size + B.size + C.size
    b = _partition((m - rest,) + tuple(B), "b")
    c = _partition((n - rest,) + tuple(C), "c")
    return b, c


def partial_pencil_weyr(P: Pencil, representation: str, extra_eigs: Iterable = ()) -> tuple[PencilWeyr, tuple[Poly, ...]]:
    """Pencil Weyr data from one representation, tolerating unresolved eigenvalues.

    ``w`` covers only the located eigenvalues; the residual factors that
    carry the rest are returned alongside.  ``a``, ``b`` and ``c`` are always
    complete since they only need the total degree of the Smith factors.
    """
    factors = invariant_factors(P)
    eigs, unresolved = discover_eigenvalues(None, extra_eigs, factors)
    total = sum(max(f.degree, 0) for f in factors)
    located = total - sum(f.degree for f in unresolved)
    if representation == "kernel":
        S = P.kernel_rep()
    elif representation == "range":
        S = P.range_rep()
    else:
        raise ValueError(f"unknown representation {representation!r}")
    W = _finite_part(S, eigs, located)
    A, B, C = weyr_inf(S), weyr_singular(S), weyr_multishift(S)
    if representation == "kernel":
        b, c = B, _kernel_completion(P.n, P.m, total, A, B, C)
    else:
        b, c = _range_completion(P.n, P.m, total, A, B, C)
    pw = PencilWeyr(W, A, b, c)
    n = total + pw.a.size + sum(k - 1 for k in conjugate(b)) + pw.c.size
    m = total + pw.a.size + b.size + sum(k - 1 for k in conjugate(c))
    if (n, m) != P.shape:
        raise InconsistentInvariants("reconstructed invariants do not match the pencil size")
    return pw, unresolved


def _strict(P: Pencil, representation: str, extra_eigs: Iterable) -> PencilWeyr:
    pw, unresolved = partial_pencil_weyr(P, representation, extra_eigs)
    if unresolved:
        raise UnresolvedEigenvalues(
            "pencil has eigenvalues outside the rationals; supply them as extra eigenvalues",
            unresolved)
    return pw


def pencil_weyr_via_kernel(P: Pencil, extra_eigs: Iterable = ()) -> PencilWeyr:
    """Pencil Weyr characteristic recovered from the kernel representation."""
    return _strict(P, "kernel", extra_eigs)


def pencil_weyr_via_range(P: Pencil, extra_eigs: Iterable = ()) -> PencilWeyr:
    """Pencil Weyr characteristic recovered from the range representation."""
    return _strict(P, "range", extra_eigs)


def pencil_weyr(P: Pencil, extra_eigs: Iterable = (), representation: str = "both") -> PencilWeyr:
    """Pencil Weyr characteristic; with ``both`` the two routes must agree."""
    extra = list(extra_eigs)
    if representation == "kernel":
        return pencil_weyr_via_kernel(P, extra)
    if representation == "range":
        return pencil_weyr_via_range(P, extra)
    if representation != "both":
        raise ValueError(f"unknown representation {representation!r}")
    k = pencil_weyr_via_kernel(P, extra)
    r = pencil_weyr_via_range(P, extra)
    if k != r:
        raise InconsistentInvariants(f"kernel route gave {k} but range route gave {r}")
    return k


def _weyr_sizes(wc: WeyrCharacteristic) -> int:
    return sum(p.size for p in wc.W.values()) + wc.A.size + wc.B.size + wc.C.size


def minimal_rows_kernel(wc: WeyrCharacteristic, m: int) -> tuple[int, PencilWeyr]:
    """Fewest rows of a pencil whose kernel representation has characteristic ``wc``.

    Also returns the pencil Weyr characteristic of such a minimal pencil.
    """
    rest = _weyr_sizes(wc)
    n = 2 * m - rest - wc.B.first()
    if n < 1:
        raise Infeasible(f"formula gives n = {n}")
    c1 = m - rest
    c = _partition((c1, c1) + tuple(wc.C), "c")
    return n, PencilWeyr(wc.W, wc.A, wc.B, c)


def minimal_columns_range(wc: WeyrCharacteristic, n: int) -> tuple[int, PencilWeyr]:
    """Fewest columns of a pencil whose range representation (in C^n) has characteristic ``wc``.

    The leading ``b`` entry is pushed down to ``B_1``; ``c_1`` is fixed by ``n``.
    """
    rest = _weyr_sizes(wc)
    m = rest + wc.B.first()
    if m < 1:
        raise Infeasible(f"formula gives m = {m}")
    b = _partition((wc.B.first(),) + tuple(wc.B), "b")
    c = _partition((n - rest,) + tuple(wc.C), "c")
    return m, PencilWeyr(wc.W, wc.A, b, c)


def minimal_rows_range(wc: WeyrCharacteristic, n: int | None = None) -> int:
    """Least ``n`` for which a relation in C^n with characteristic ``wc`` is a range representation.

    This is ``|W| + |A| + |B| + |C| + C_1``: the row count must leave room for
    ``c_1 >= C_1``.
    """
    need = _weyr_sizes(wc) + wc.C.first()
    if need < 1:
        raise Infeasible(f"formula gives n = {need}")
    if n is not None and n < need:
        raise Infeasible(f"a relation in C^{n} cannot have this characteristic")
    return need


@dataclass(frozen=True)
class PencilStructure:
    """Strict equivalence data computable without locating eigenvalues."""

    shape: tuple
    finite_factors: tuple
    alpha: Partition
    beta: Partition
    gamma: Partition


def pencil_structure(P: Pencil) -> PencilStructure:
    """Smith factors of ``sE - F``, ``alpha``, and the minimal-index data.

    ``b`` and ``c`` are obtained from both representations (``|w|`` is the
    total degree of the invariant factors) and must agree.
    """
    factors = invariant_factors(P)
    wsize = sum(max(f.degree, 0) for f in factors)
    alpha = _alpha(P)
    Sk, Sr = P.kernel_rep(), P.range_rep()
    Ak, Bk, Ck = weyr_inf(Sk), weyr_singular(Sk), weyr_multishift(Sk)
    Ar, Br, Cr = weyr_inf(Sr), weyr_singular(Sr), weyr_multishift(Sr)
    ck = _kernel_completion(P.n, P.m, wsize, Ak, Bk, Ck)
    br, cr = _range_completion(P.n, P.m, wsize, Ar, Br, Cr)
    if (Bk, ck) != (br, cr) or Ak != Ar or conjugate(alpha) != Ak:
        raise InconsistentInvariants("kernel and range routes disagree on the singular structure")
    nontrivial = tuple(f for f in factors if f.degree >= 1)
    return PencilStructure(P.shape, nontrivial, alpha, conjugate(Bk), conjugate(ck))


def strictly_equivalent_pencils(P: Pencil, Q: Pencil) -> bool:
    if P.shape != Q.shape:
        return False
    return pencil_structure(P) == pencil_structure(Q)


def apply_pencil_equivalence(P: Pencil, U: Matrix, V: Matrix) -> Pencil:
    """``U (sE - F) V``."""
    if U.shape != (P.n, P.n) or V.shape != (P.m, P.m):
        raise ShapeMismatch("U must be n x n and V must be m x m")
    U.inverse()
    V.inverse()
    return Pencil(U @ P.E @ V, U @ P.F @ V)


def random_partition(rng: random.Random, budget: int, max_part: int = 4, max_len: int = 4) -> Partition:
    parts = []
    while budget > 0 and len(parts) < max_len and rng.random() < 0.7:
        k = rng.randint(1, min(max_part, budget))
        parts.append(k)
        budget -= k
    return Partition(sorted(parts, reverse=True))


def random_invariants(rng: random.Random, max_size: int = 14,
                      eigenvalues=(0, 1, -1, 2, 3), max_part: int = 4) -> KroneckerInvariants:
    """Random Kronecker data whose pencil has ``max(n, m) <= max_size``."""
    while True:
        finite = {}
        for lam in rng.sample(list(eigenvalues), rng.randint(0, 3)):
            finite[lam] = random_partition(rng, max_part + 2, max_part)
        inv = KroneckerInvariants(
            finite=finite,
            alpha=random_partition(rng, max_part + 2, max_part, 3),
            beta=random_partition(rng, max_part + 2, max_part, 3),
            gamma=random_partition(rng, max_part + 2, max_part, 3),
        )
        n, m = inv.shape()
        if max(n, m) <= max_size:
            return inv


def random_invertible(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        M = Matrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], n)
        if M.rank() == n:
            return M
