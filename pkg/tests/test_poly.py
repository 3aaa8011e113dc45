import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from kronweyr.errors import ZeroPolynomial
from kronweyr.matrix import rank
from kronweyr.poly import (
    Poly,
    PolyMatrix,
    coprime_base,
    format_poly,
    multiplicity,
    rational_roots,
    smith_normal_form,
)
from kronweyr.scalars import I

from oracles import determinantal_divisors

s = Poly((0, 1))
polys = st.lists(st.integers(-4, 4), max_size=5).map(Poly)


def test_basic_arithmetic():
    p = (s - 1) * (s - 2)
    assert p == Poly((2, -3, 1))
    assert p.degree == 2 and Poly().degree == -1
    q, r = divmod(p, s - 1)
    assert q == s - 2 and r.is_zero()
    assert format_poly(p) == "s^2-3*s+2"
    assert p(3) == 2


def test_smith_diagonal_equal():
    _, f = smith_normal_form(PolyMatrix.from_rows([[s, 0], [0, s]]))
    assert f == (s, s)


def test_smith_needs_gcd():
    _, f = smith_normal_form(PolyMatrix.from_rows([[s, 0], [0, s * s - s]]))
    assert f == (s, s * s - s)


def test_smith_zero_matrix():
    _, f = smith_normal_form(PolyMatrix.from_rows([[0, 0, 0], [0, 0, 0]]))
    assert f == ()


def test_smith_coprime_entries():
    _, f = smith_normal_form(PolyMatrix.from_rows([[s - 1, 0], [0, s - 2]]))
    assert f == (Poly((1,)), (s - 1) * (s - 2))


def test_smith_gaussian_entries():
    P = PolyMatrix.from_rows([[s - I, 1], [0, s + I]])
    _, f = smith_normal_form(P)
    assert f == (Poly((1,)), s * s + 1)


@pytest.mark.parametrize("p, roots, residual", [
    ((s - 1) * (s - 2), {mpq(1): 1, mpq(2): 1}, Poly((1,))),
    (s * s + 1, {}, s * s + 1),
    (2 * s - 1, {mpq(1, 2): 1}, Poly((1,))),
    ((s + 3) ** 3 * (s * s - 2), {mpq(-3): 3}, s * s - 2),
    (Poly((5,)), {}, Poly((1,))),
])
def test_rational_roots(p, roots, residual):
    got, res = rational_roots(p)
    assert got == roots
    assert res.monic() == residual


def test_rational_roots_zero():
    with pytest.raises(ZeroPolynomial):
        rational_roots(Poly())


def test_non_real_goes_to_residual():
    p = (s - I) * (s - 2)
    roots, res = rational_roots(p)
    assert roots == {} and res.monic() == p.monic()


def test_multiplicity():
    k, rest = multiplicity((s - 2) ** 2 * (s + 1), 2)
    assert k == 2 and rest.monic() == s + 1


def test_coprime_base():
    base = coprime_base([(s * s + 1) * (s * s - 2), (s * s + 1) ** 2])
    assert sorted(map(format_poly, base)) == ["s^2+1", "s^2-2"]


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys)
def test_gcd_divides(a, b):
    g = a.gcd(b)
    if not g.is_zero():
        assert g.divides(a) and g.divides(b)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_rational_roots_of_products(roots, mults):
    p = Poly((1,))
    want = {}
    for r, k in zip(roots, mults):
        p = p * (s - r) ** k
        want[mpq(r)] = want.get(mpq(r), 0) + k
    got, res = rational_roots(p * 7)
    assert got == want and res.degree == 0


def _random_polymatrix(rng, rows, cols, deg):
    return PolyMatrix.from_rows(
        [[Poly([rng.randint(-2, 2) for _ in range(rng.randint(0, deg + 1))]) for _ in range(cols)]
         for _ in range(rows)])


def test_smith_matches_determinantal_divisors():
    rng = random.Random(11)
    for _ in range(40):
        P = _random_polymatrix(rng, rng.randint(1, 3), rng.randint(1, 3), 2)
        _, f = smith_normal_form(P)
        D = determinantal_divisors(P)
        assert len(f) == len(D)
        prev = Poly((1,))
        for d, fac in zip(D, f):
            assert (d // prev).monic() == fac
            prev = d


def test_smith_rank_at_regular_point():
    rng = random.Random(12)
    for _ in range(40):
        P = _random_polymatrix(rng, rng.randint(1, 4), rng.randint(1, 4), 3)
        _, f = smith_normal_form(P)
        for t in range(50):
            if f and f[-1](t) == 0:
                continue
            assert rank(P.evaluate(t)) == len(f)
            break
