import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from kronweyr.errors import DimensionMismatch, NotAChain, NotSingular, NotSquare, ShapeMismatch
from kronweyr.matrix import Matrix
from kronweyr.pencil import KroneckerInvariants, build_kronecker, random_invertible
from kronweyr.relation import (
    Chain,
    LinearRelation,
    apply_equivalence,
    compose,
    direct_sum,
    dom,
    from_graph,
    identity,
    inverse,
    is_chain,
    kernel,
    kernel_rep,
    mul,
    op_sum,
    power,
    ran,
    range_rep,
    root_manifold,
    root_manifold_inf,
    scale,
    shift,
    singular_chain_space,
    singular_chains,
    transform_singular_chain,
)
from kronweyr.subspace import Subspace, span

from oracles import compose_by_linking
from strategies import matrices, relations

E1 = Matrix.from_rows([[1, 0, 0, 0]])
F1 = Matrix.from_rows([[0, 1, 0, 0]])
J2 = Matrix.from_rows([[0, 1], [0, 0]])


def test_graph_examples():
    assert from_graph(Matrix.zeros(2, 2)) == LinearRelation.from_pairs(2, [((1, 0), (0, 0)), ((0, 1), (0, 0))])
    assert from_graph(Matrix.identity(3)) == identity(3)
    assert from_graph(J2) == LinearRelation.from_pairs(2, [((1, 0), (0, 0)), ((0, 1), (1, 0))])
    with pytest.raises(NotSquare):
        from_graph(E1)


def test_kernel_rep_of_row_pencil():
    S = kernel_rep(E1, F1)
    assert S.m == 4 and S.dim == 7
    # x_2 = y_1, everything else free
    assert S.contains((5, 2, -1, 3), (2, 7, 0, 1))
    assert not S.contains((0, 1, 0, 0), (0, 0, 0, 0))


def test_kernel_rep_of_column_pencil_is_zero():
    S = kernel_rep(E1.T, F1.T)
    assert S.m == 1 and S.dim == 0


def test_range_reps():
    assert range_rep(E1, F1).space.is_full()
    S = range_rep(E1.T, F1.T)
    assert S.m == 4 and S == LinearRelation.from_pairs(4, [((1, 0, 0, 0), (0, 1, 0, 0))])
    assert kernel_rep(Matrix.identity(3), Matrix.identity(3)) == identity(3)
    assert range_rep(Matrix.identity(3), Matrix.identity(3)) == identity(3)
    with pytest.raises(ShapeMismatch):
        kernel_rep(E1, F1.T)


def test_row_and_column_pencil_powers():
    S = kernel_rep(E1, F1)
    assert power(S, 2).space.is_full()
    assert kernel(S).dim == 3
    assert singular_chain_space(S).is_full()
    T = range_rep(E1.T, F1.T)
    assert power(T, 2).dim == 0
    assert ran(T) == span(4, [(0, 1, 0, 0)])


def test_inverse_scale_shift():
    A = Matrix.from_rows([[2, 1], [0, 3]])
    assert inverse(identity(2)) == identity(2)
    assert inverse(from_graph(A)) == from_graph(A.inverse())
    assert shift(from_graph(A), 2) == from_graph(A - Matrix.identity(2).scale(2))
    assert scale(from_graph(A), 0) == from_graph(Matrix.zeros(2, 2))
    empty = LinearRelation(3, Subspace.zero(6))
    assert inverse(empty).dim == 0


def test_sum_and_composition_of_graphs():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.from_rows([[0, 1], [-1, 2]])
    assert op_sum(from_graph(A), from_graph(B)) == from_graph(A + B)
    assert compose(from_graph(A), from_graph(B)) == from_graph(A @ B)
    empty = LinearRelation(2, Subspace.zero(4))
    assert op_sum(empty, from_graph(A)).dim == 0
    with pytest.raises(DimensionMismatch):
        compose(identity(2), identity(3))


def test_multivalued_part():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    assert mul(from_graph(A)).is_zero()
    assert mul(inverse(from_graph(J2))) == span(2, [(1, 0)])
    assert root_manifold_inf(inverse(from_graph(J2))).is_full()


def test_direct_sum_and_equivalence():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.from_rows([[5]])
    assert direct_sum(from_graph(A), from_graph(B)) == from_graph(Matrix.block_diag(A, B))
    S = kernel_rep(E1, F1)
    assert apply_equivalence(S, Matrix.identity(4)) == S


def test_root_manifold_of_jordan():
    A = Matrix.block_diag(J2, Matrix.from_rows([[3]]))
    S = from_graph(A)
    assert root_manifold(S, 0) == span(3, [(1, 0, 0), (0, 1, 0)])
    assert root_manifold(S, 3) == span(3, [(0, 0, 1)])
    assert root_manifold(S, 1).is_zero()


@given(relations(), st.data())
def test_compose_matches_linking_oracle(S, data):
    T = data.draw(relations(m=S.m))
    assert compose(S, T) == compose_by_linking(S, T)


@given(relations())
def test_compose_with_identity(S):
    I = identity(S.m)
    assert compose(S, I) == S == compose(I, S)


@given(relations())
def test_inverse_is_involution(S):
    T = inverse(S)
    assert T.dim == S.dim
    assert inverse(T) == S
    assert dom(T) == ran(S) and kernel(T) == mul(S)


@given(relations(), st.integers(-2, 2))
def test_shift_preserves_dim(S, lam):
    T = shift(S, lam)
    assert T.dim == S.dim
    assert shift(T, -lam) == S


@given(relations(max_m=3))
def test_power_ladders(S):
    P = identity(S.m)
    for k in range(1, 5):
        P = compose_by_linking(S, P)
        assert power(S, k) == P
        assert S.kernel_power(k) == kernel(P)
        assert S.mul_power(k) == mul(P)
        assert S.range_power(k) == ran(P)
        assert S.dom_power(k) == dom(P)


@given(relations(max_m=3), matrices(rows=3, cols=3, entries=st.integers(-3, 3)))
def test_equivalence_preserves_dimensions(S, T):
    if S.m != 3 or T.rank() < 3:
        return
    R = apply_equivalence(S, T)
    assert R.dim == S.dim
    assert singular_chain_space(R).dim == singular_chain_space(S).dim


def _beta_relation(betas):
    P = build_kronecker(KroneckerInvariants(beta=betas))
    return kernel_rep(P.E, P.F)


def test_singular_chains_of_beta_block():
    S = _beta_relation((3,))
    assert singular_chains(S, 1) == singular_chains(S, 2) == []
    chains = singular_chains(S, 3)
    assert len(chains) == 1
    for c in chains:
        assert c.is_singular() and is_chain(S, c)


@pytest.mark.parametrize("lam", [0, 1, -1, 2, mpq(1, 2)])
def test_transform_singular_chain(lam):
    S = _beta_relation((4, 2))
    for s in range(1, 5):
        for c in singular_chains(S, s):
            out = transform_singular_chain(S, c, lam)
            assert out.is_singular() and is_chain(shift(S, lam), out)
            if lam == 0:
                assert out == c


def test_single_step_chain_is_fixed():
    S = _beta_relation((1,))
    c = singular_chains(S, 1)[0]
    assert transform_singular_chain(S, c, 5) == c


def test_two_step_expansion():
    S = _beta_relation((2,))
    c, = singular_chains(S, 2)
    (_, x1), (_, x2), _ = c.pairs
    out = transform_singular_chain(S, c, 1)
    z1, z2 = out.pairs[0][1], out.pairs[1][1]
    assert z1 == x1
    assert z2 == tuple(a + b for a, b in zip(x1, x2))


def test_transform_rejects_bad_chains():
    S = _beta_relation((3,))
    z = (0, 0, 0)
    with pytest.raises(NotSingular):
        transform_singular_chain(S, Chain.from_vectors(3, [(1, 0, 0), z]), 1)
    with pytest.raises(NotAChain):
        transform_singular_chain(S, Chain.from_vectors(3, [z, (0, 0, 1), z]), 1)


def test_random_equivalence_keeps_chains():
    rng = random.Random(3)
    S = _beta_relation((3, 2))
    T = random_invertible(rng, S.m)
    R = apply_equivalence(S, T)
    assert singular_chain_space(R).dim == singular_chain_space(S).dim
