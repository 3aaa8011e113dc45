import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronweyr.errors import DimensionMismatch, NotRankOne, ZeroPerturbation
from kronweyr.matrix import Matrix, rank
from kronweyr.pencil import KroneckerInvariants, Pencil, build_kronecker, random_invariants
from kronweyr.perturb import (
    COLUMN,
    ROW,
    RankOnePencil,
    check_representation_transfer,
    detect_form,
    orthogonal_relation,
    perturbation_bound_report,
    random_rank_one,
    rank_one_pencil,
    relation_perturbation_rank,
    run_perturbation_trials,
)
from kronweyr.relation import LinearRelation, from_graph, identity, inverse
from kronweyr.subspace import span

from strategies import relations

ROW_PENCIL = Pencil(Matrix.from_rows([[1, 0, 0, 0]]), Matrix.from_rows([[0, 1, 0, 0]]))


def normal_rank(P):
    return max(rank(P.E.scale(t) - P.F) for t in range(min(P.shape) + 2))


def test_rank_one_examples():
    D = rank_one_pencil(RankOnePencil(COLUMN, (1, 0), (0, 0), (1, 1)))
    assert D.E == Matrix.from_rows([[1, 1], [0, 0]]) and D.F.is_zero()
    D = rank_one_pencil(RankOnePencil(ROW, (0, 0), (1, 0), (1, 0)))
    assert D.E.is_zero() and D.F == Matrix.from_rows([[1, 0], [0, 0]])
    with pytest.raises(ZeroPerturbation):
        rank_one_pencil(RankOnePencil(ROW, (0, 0), (0, 0), (1, 0)))
    with pytest.raises(ZeroPerturbation):
        rank_one_pencil(RankOnePencil(COLUMN, (1,), (0,), (0, 0)))


def test_rank_one_shapes():
    assert rank_one_pencil(RankOnePencil(COLUMN, (1, 2, 3), (0, 1, 0), (1, 1))).shape == (3, 2)
    assert rank_one_pencil(RankOnePencil(ROW, (1, 2), (0, 1), (1, 0, 1))).shape == (3, 2)


@given(st.integers(0, 10 ** 6))
def test_generated_pencils_have_normal_rank_one(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    form = rng.choice([COLUMN, ROW])
    D = rank_one_pencil(random_rank_one(rng, n, m, form))
    assert normal_rank(D) == 1
    assert form in detect_form(D)


def test_detect_form():
    assert detect_form(Pencil(Matrix.from_rows([[1, 0], [2, 0]]), Matrix.from_rows([[0, 1], [0, 2]]))) == (ROW,)
    assert detect_form(Pencil(Matrix.from_rows([[1, 1], [0, 0]]), Matrix.from_rows([[0, 0], [2, 2]]))) == (COLUMN,)
    with pytest.raises(NotRankOne):
        detect_form(Pencil(Matrix.zeros(2, 2), Matrix.zeros(2, 2)))
    with pytest.raises(NotRankOne):
        detect_form(Pencil(Matrix.identity(2), Matrix.zeros(2, 2)))


def test_relation_rank_examples():
    S = from_graph(Matrix.zeros(2, 2))
    assert relation_perturbation_rank(S, S) == 0
    assert relation_perturbation_rank(S, from_graph(Matrix.from_rows([[1, 0], [0, 0]]))) == 1
    assert relation_perturbation_rank(identity(2), S) == 2
    with pytest.raises(DimensionMismatch):
        relation_perturbation_rank(identity(2), identity(3))


def test_transfer_examples():
    r = check_representation_transfer(ROW_PENCIL, ROW_PENCIL)
    assert r["ok"] and r["forms"] == []
    assert all(v == 0 for k in ("kernel", "range") for v in r[k].values())
    Q = ROW_PENCIL + rank_one_pencil(RankOnePencil(ROW, (0, 0, 1, 0), (0, 0, 0, 0), (1,)))
    r = check_representation_transfer(ROW_PENCIL, Q)
    assert r["ok"] and r["range"]["rank"] <= 1 and r["kernel"]["rank"] <= 1


@given(relations(max_m=3), st.data())
def test_rank_equivalences(S, data):
    extra = data.draw(st.lists(st.integers(-2, 2), min_size=2 * S.m, max_size=2 * S.m))
    T = LinearRelation(S.m, S.space + span(2 * S.m, [extra]))
    r = relation_perturbation_rank(S, T)
    assert r <= 1
    assert relation_perturbation_rank(inverse(S), inverse(T)) == r
    assert relation_perturbation_rank(orthogonal_relation(S), orthogonal_relation(T)) == r


@given(st.integers(0, 10 ** 6))
def test_form_selects_representation(seed):
    rng = random.Random(seed)
    while True:
        P = build_kronecker(random_invariants(rng, max_size=6))
        if min(P.shape):
            break
    form = rng.choice([COLUMN, ROW])
    Q = P + rank_one_pencil(random_rank_one(rng, P.n, P.m, form))
    report = check_representation_transfer(P, Q)
    assert report["ok"]
    if form == COLUMN:
        assert report["range"]["rank"] <= 1
    else:
        assert report["kernel"]["rank"] <= 1


def test_bound_report_requires_rank_one():
    with pytest.raises(NotRankOne):
        perturbation_bound_report(ROW_PENCIL, ROW_PENCIL)


def test_regular_jordan_example():
    P = build_kronecker(KroneckerInvariants(finite={0: (2,)}))
    Q = P + rank_one_pencil(RankOnePencil(COLUMN, (0, 0), (1, 0), (0, 1)))
    rep = perturbation_bound_report(P, Q)
    assert rep.regular and rep.ok
    assert any(r.rule.startswith("regular") for r in rep.records)


def test_bound_report_with_irrational_eigenvalues():
    P = Pencil(Matrix.identity(2), Matrix.from_rows([[0, 2], [1, 0]]))
    Q = P + rank_one_pencil(RankOnePencil(COLUMN, (0, 0), (1, 0), (1, 0)))
    rep = perturbation_bound_report(P, Q)
    assert rep.ok
    assert any(r.point == "root of s^2-2" for r in rep.records)


def test_trials_contract():
    assert run_perturbation_trials(0) == {"trials": 0, "violations": [], "tightness": {},
                                          "forms": {}, "regular_pairs": 0}
    a = run_perturbation_trials(15, 8, seed=4)
    assert a == run_perturbation_trials(15, 8, seed=4)
    assert a["violations"] == []
    v = run_perturbation_trials(3, 6, seed=1, verbose=True)
    assert len(v["reports"]) == 3
