"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from pottskit.graph import Multigraph
from pottskit.partition import PottsModel

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
nonzero = rationals.filter(lambda x: x != 0)


@st.composite
def multigraphs(draw, max_vertices=4, max_edges=5, loops=True, min_vertices=1):
    v = draw(st.integers(min_vertices, max_vertices))
    pair = st.tuples(st.integers(0, v - 1), st.integers(0, v - 1))
    if not loops:
        pair = pair.filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, max_size=max_edges)) if v > 1 or loops else []
    return Multigraph.from_pairs(v, pairs)


@st.composite
def models(draw, n=st.integers(2, 3), max_vertices=4, max_edges=5):
    g = draw(multigraphs(max_vertices=max_vertices, max_edges=max_edges))
    ws = tuple((draw(rationals), draw(nonzero)) for _ in g.edges)
    return PottsModel(g, draw(n), ws)


def isotropic(g, n, a, b):
    return PottsModel.isotropic(g, n, Fraction(a), Fraction(b))
