"""Hypothesis strategies for exact objects."""

from hypothesis import strategies as st

from kronweyr.matrix import Matrix
from kronweyr.relation import LinearRelation
from kronweyr.scalars import gaussian
from kronweyr.subspace import span

small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.builds(lambda p, q: gaussian(p) / q, st.integers(-9, 9), st.integers(1, 5))
scalars = st.builds(gaussian, rationals, st.one_of(st.just(0), rationals))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=4, entries=small_ints):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    vals = draw(st.lists(entries, min_size=r * c, max_size=r * c))
    return Matrix.from_entries(r, c, vals)


@st.composite
def subspaces(draw, d, max_vectors=None):
    k = draw(st.integers(0, d if max_vectors is None else max_vectors))
    vecs = [draw(st.lists(small_ints, min_size=d, max_size=d)) for _ in range(k)]
    return span(d, vecs)


@st.composite
def relations(draw, max_m=4, m=None):
    m = draw(st.integers(1, max_m)) if m is None else m
    return LinearRelation(m, draw(subspaces(2 * m)))
