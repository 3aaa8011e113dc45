"""Rank-one perturbations of pencils and the resulting Weyr bounds."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotRankOne, ZeroPerturbation
from .matrix import Matrix, rank
from .pencil import (
    KroneckerInvariants,
    Pencil,
    build_kronecker,
    invariant_factors,
    partial_pencil_weyr,
    random_invariants,
    random_partition,
)
from .poly import Poly, coprime_base
from .relation import LinearRelation, inverse
from .scalars import conj, format_scalar, scalar, sort_key
from .subspace import intersect, orthogonal_complement
from .weyr import Partition, conjugate

__all__ = [
    "RankOnePencil",
    "BoundRecord",
    "BoundReport",
    "rank_one_pencil",
    "detect_form",
    "relation_perturbation_rank",
    "orthogonal_relation",
    "check_representation_transfer",
    "perturbation_bound_report",
    "run_perturbation_trials",
]

COLUMN = "column"  # (su - v) w*
ROW = "row"        # w (su* - v*)


@dataclass(frozen=True)
class RankOnePencil:
    """``(su - v)w*`` (column form) or ``w(su* - v*)`` (row form).

    In column form ``u, v`` have length ``n`` and ``w`` length ``m``; in row
    form ``w`` has length ``n`` and ``u, v`` length ``m``.
    """

    form: str
    u: tuple
    v: tuple
    w: tuple

    def __post_init__(self):
        if self.form not in (COLUMN, ROW):
            raise ValueError(f"unknown form {self.form!r}")
        for name in ("u", "v", "w"):
            object.__setattr__(self, name, tuple(scalar(x) for x in getattr(self, name)))
        if len(self.u) != len(self.v):
            raise DimensionMismatch("u and v must have equal length")

    @property
    def shape(self) -> tuple[int, int]:
        if self.form == COLUMN:
            return len(self.u), len(self.w)
        return len(self.w), len(self.u)


def _outer(a: Sequence, b: Sequence) -> Matrix:
    """``a b*``."""
    return Matrix(len(a), len(b), tuple(tuple(x * conj(y) for y in b) for x in a))


def rank_one_pencil(r: RankOnePencil) -> Pencil:
    if not any(r.w) or not (any(r.u) or any(r.v)):
        raise ZeroPerturbation("a rank one pencil needs w != 0 and (u, v) != (0, 0)")
    if r.form == COLUMN:
        return Pencil(_outer(r.u, r.w), _outer(r.v, r.w))
    # w u* as an outer product: rows are w_i * conj(u)
    return Pencil(_outer(r.w, r.u), _outer(r.w, r.v))


def detect_form(D: Pencil) -> tuple[str, ...]:
    """Forms in which the pencil ``D = sΔE - ΔF`` can be written.

    Column form needs the stacked ``[ΔE; ΔF]`` to have a one-dimensional row
    space, row form needs ``[ΔE, ΔF]`` to have a one-dimensional column space.
    """
    if D.E.is_zero() and D.F.is_zero():
        raise NotRankOne("the perturbation is zero")
    forms = []
    if rank(D.E.vstack(D.F)) == 1:
        forms.append(COLUMN)
    if rank(D.E.hstack(D.F)) == 1:
        forms.append(ROW)
    if not forms:
        raise NotRankOne("the difference has normal rank greater than one")
    return tuple(forms)


def relation_perturbation_rank(S: LinearRelation, T: LinearRelation) -> int:
    """``max(dim S/(S∩T), dim T/(S∩T))``."""
    if S.m != T.m:
        raise DimensionMismatch("relations live in spaces of different dimension")
    common = intersect(S.space, T.space).dim
    return max(S.dim - common, T.dim - common)


def orthogonal_relation(S: LinearRelation) -> LinearRelation:
    """``S^⊥`` in C^{2m} for the standard sesquilinear form."""
    return LinearRelation(S.m, orthogonal_complement(S.space))


def check_representation_transfer(P: Pencil, Q: Pencil) -> dict:
    """Perturbation ranks of the kernel and range representations of ``P`` and ``Q``.

    A row form difference must leave the kernel representations within rank
    one, a column form difference the range representations.  For each pair
    the ranks of the inverses and of the orthogonal complements must agree
    with the rank of the pair itself.  ``Q = P`` is allowed and gives rank 0.
    """
    if P.shape != Q.shape:
        raise DimensionMismatch("pencils must have equal size")
    D = Pencil(Q.E - P.E, Q.F - P.F)
    forms = () if D.E.is_zero() and D.F.is_zero() else detect_form(D)
    report = {"forms": list(forms), "ok": True}
    for name, S, T in (("kernel", P.kernel_rep(), Q.kernel_rep()),
                       ("range", P.range_rep(), Q.range_rep())):
        r = relation_perturbation_rank(S, T)
        r_inv = relation_perturbation_rank(inverse(S), inverse(T))
        r_perp = relation_perturbation_rank(orthogonal_relation(S), orthogonal_relation(T))
        report[name] = {"rank": r, "inverse_rank": r_inv, "complement_rank": r_perp}
        if not r == r_inv == r_perp:
            report["ok"] = False
    if ROW in forms and report["kernel"]["rank"] > 1:
        report["ok"] = False
    if COLUMN in forms and report["range"]["rank"] > 1:
        report["ok"] = False
    return report


@dataclass(frozen=True)
class BoundRecord:
    rule: str
    point: str
    k: int
    lhs: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.lhs <= self.bound

    @property
    def tight(self) -> bool:
        return self.lhs == self.bound


@dataclass
class BoundReport:
    forms: tuple
    regular: bool
    records: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def violations(self) -> list:
        return [r for r in self.records if not r.ok]

    def to_json(self) -> dict:
        return {
            "forms": list(self.forms),
            "regular": self.regular,
            "ok": self.ok,
            "records": [{"rule": r.rule, "point": r.point, "k": r.k, "lhs": r.lhs,
                         "bound": r.bound, "ok": r.ok} for r in self.records],
        }


def _exponent(q: Poly, f: Poly) -> int:
    e = 0
    while f.degree >= q.degree and q.divides(f):
        f = f // q
        e += 1
    return e


def _class_weyr(q: Poly, residuals: Sequence[Poly]) -> Partition:
    """Weyr sequence at any root of the squarefree factor ``q``."""
    segre = sorted((_exponent(q, f) for f in residuals), reverse=True)
    return conjugate(segre)


def _is_regular(P: Pencil) -> bool:
    return P.n == P.m and len([f for f in invariant_factors(P) if f]) == P.n


def perturbation_bound_report(P: Pencil, Q: Pencil, extra_eigs: Iterable = ()) -> BoundReport:
    """Check the rank-one bounds on the change of ``(w, a, b)``.

    Row form differences are measured through the kernel representations with
    ``b_k``; column form differences through the range representations with
    ``b_{k+1}``.  Eigenvalues that are neither rational nor supplied are
    grouped by a coprime base of the residual Smith factors; each base
    element gets one Weyr sequence, read off its exponents.
    """
    if P.shape != Q.shape:
        raise DimensionMismatch("pencils must have equal size")
    forms = detect_form(Pencil(Q.E - P.E, Q.F - P.F))
    extra = [scalar(x) for x in extra_eigs]
    regular = _is_regular(P) and _is_regular(Q)
    report = BoundReport(forms, regular)
    for form in forms:
        rep, shift = ("kernel", 0) if form == ROW else ("range", 1)
        pw, pres = partial_pencil_weyr(P, rep, extra)
        qw, qres = partial_pencil_weyr(Q, rep, extra)
        points = []
        for lam in sorted(set(pw.w) | set(qw.w), key=sort_key):
            points.append((format_scalar(lam), pw.w_at(lam), qw.w_at(lam)))
        for q in coprime_base(list(pres) + list(qres)):
            points.append((f"root of {q}", _class_weyr(q, pres), _class_weyr(q, qres)))
        points.append(("inf", pw.a, qw.a))
        tag = "b_k" if shift == 0 else "b_k+1"
        for label, p, t in points:
            top = max(len(p), len(t), len(pw.b), len(qw.b)) + 1
            for k in range(1, top + 1):
                lhs = abs((p.at(k) + pw.b.at(k + shift)) - (t.at(k) + qw.b.at(k + shift)))
                rule = f"{form}:{'a' if label == 'inf' else 'w'}+{tag}"
                report.records.append(BoundRecord(rule, label, k, lhs, k))
        if regular:
            for label, p, t in points:
                for k in range(1, max(len(p), len(t)) + 2):
                    rule = f"regular:{'a' if label == 'inf' else 'w'}"
                    report.records.append(BoundRecord(rule, label, k, abs(p.at(k) - t.at(k)), 1))
    return report


def _vec(rng: random.Random, n: int, lo: int = -2, hi: int = 2) -> list:
    return [rng.randint(lo, hi) for _ in range(n)]


def _nonzero_vec(rng: random.Random, n: int) -> list:
    while True:
        v = _vec(rng, n)
        if any(v):
            return v


def random_rank_one(rng: random.Random, n: int, m: int, form: str) -> RankOnePencil:
    """Random rank one pencil of the given form with entries in ``{-2..2}``."""
    while True:
        if form == COLUMN:
            u, v, w = _vec(rng, n), _vec(rng, n), _nonzero_vec(rng, m)
        else:
            u, v, w = _vec(rng, m), _vec(rng, m), _nonzero_vec(rng, n)
        if any(u) or any(v):
            return RankOnePencil(form, u, v, w)


def _regular_invariants(rng: random.Random, max_size: int) -> KroneckerInvariants:
    while True:
        finite = {lam: random_partition(rng, 5, 3) for lam in rng.sample([0, 1, -1, 2, 3], rng.randint(1, 3))}
        inv = KroneckerInvariants(finite=finite, alpha=random_partition(rng, 4, 3, 2))
        n, m = inv.shape()
        if 0 < n <= max_size:
            return inv


def run_perturbation_trials(trials: int, max_size: int = 12, seed: int = 0,
                            verbose: bool = False) -> dict:
    """Seeded random trials of the rank-one bounds; trial ``i`` uses its own generator."""
    summary = {"trials": trials, "violations": [], "tightness": {},
               "forms": {}, "regular_pairs": 0}
    if trials <= 0:
        return summary
    tight = Counter()
    forms = Counter()
    details = []
    for i in range(trials):
        rng = random.Random(f"{seed}:{i}")
        if i % 3 == 2:
            inv = _regular_invariants(rng, max_size)
        else:
            while True:
                inv = random_invariants(rng, max_size)
                if min(inv.shape()) > 0:
                    break
        P = build_kronecker(inv)
        form = COLUMN if rng.random() < 0.5 else ROW
        D = rank_one_pencil(random_rank_one(rng, P.n, P.m, form))
        Q = P + D
        rep = perturbation_bound_report(P, Q)
        for f in rep.forms:
            forms[f] += 1
        if rep.regular:
            summary["regular_pairs"] += 1
        for r in rep.records:
            if r.tight and r.bound > 0:
                tight[r.bound] += 1
        for r in rep.violations():
            summary["violations"].append({"trial": i, "rule": r.rule, "point": r.point,
                                          "k": r.k, "lhs": r.lhs, "bound": r.bound})
        if verbose:
            details.append({"trial": i, "invariants": repr(inv), "generated_form": form,
                            "report": rep.to_json()})
    summary["tightness"] = {str(k): tight[k] for k in sorted(tight)}
    summary["forms"] = {f: forms[f] for f in sorted(forms)}
    if verbose:
        summary["reports"] = details
    return summary
