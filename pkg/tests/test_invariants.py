import itertools
from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given
from hypothesis import strategies as st

from pottskit.corpus import k3, multigraph_corpus
from pottskit.graph import Multigraph, disjoint_union, one_point_join
from pottskit.invariants import (bad_coloring, bad_coloring_from_tutte, chromatic,
                                 complete_flow, flow, flow_count_oracle, proper_colorings,
                                 tutte, verify_convolution_formula, z_from_tutte)
from pottskit.partition import PottsModel, partition_enumerate
from pottskit.poly import BiPoly, UniPoly
from strategies import multigraphs, nonzero, rationals


def G(v, pairs):
    return Multigraph.from_pairs(v, pairs)


def spanning_trees(g):
    # Kirchhoff's matrix-tree theorem with sympy exact determinant
    v = g.num_vertices
    L = sympy.zeros(v, v)
    for u, w in g.pairs:
        if u != w:
            L[u, u] += 1
            L[w, w] += 1
            L[u, w] -= 1
            L[w, u] -= 1
    return L[1:, 1:].det() if v > 1 else 1


def test_tutte_examples():
    assert str(tutte(k3())) == "x^2 + x + y"
    assert str(tutte(G(2, [(0, 1)]))) == "x"
    assert str(tutte(G(1, [(0, 0)]))) == "y"
    assert str(tutte(G(2, [(0, 1)] * 3))) == "y^2 + x + y"


def test_z_from_tutte_examples():
    assert z_from_tutte(k3(), 2, 3, 1) == 72
    for n in (2, 3, 5):
        # n equal-spin states weigh alpha, n(n-1) unequal ones beta
        assert z_from_tutte(G(2, [(0, 1)]), n, 7, 2) == n * (7 + (n - 1) * 2)
        assert z_from_tutte(G(1, [(0, 0)]), n, 7, 2) == n * 7


def test_polynomial_examples():
    n = UniPoly.x()
    assert chromatic(k3()) == n * (n - 1) * (n - 2)
    assert chromatic(G(2, [(0, 1)])) == n * (n - 1)
    assert chromatic(G(1, [(0, 0)])).is_zero()
    assert flow(k3()) == n - 1
    assert flow(G(3, [(0, 1), (1, 2)])).is_zero()
    assert flow(G(1, [(0, 0)])) == n - 1
    assert complete_flow(k3()) == n
    assert complete_flow(G(3, [(0, 1), (1, 2)])) == UniPoly([1])
    assert complete_flow(G(2, [(0, 1), (0, 1)])) == n


def test_flow_oracle_examples():
    assert flow_count_oracle(k3(), 3, True) == 2
    assert flow_count_oracle(k3(), 3, False) == 3
    assert flow_count_oracle(G(4, [(0, 1), (1, 2), (1, 3)]), 3, True) == 0


def test_bad_coloring_examples():
    N, T = BiPoly.gens(("n", "t"))
    assert bad_coloring(G(2, [(0, 1)])) == N * T + N * (N - 1)
    assert bad_coloring(G(1, [(0, 0)])) == N * T


def test_convolution_examples():
    for g in (G(2, [(0, 1)]), k3(), G(2, [(0, 1), (0, 1)])):
        assert verify_convolution_formula(g).is_zero()


def test_tutte_oracle_sympy_k4():
    # T(K4) is a textbook value
    x, y = sympy.symbols("x y")
    K4 = G(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    want = sympy.Poly(x**3 + 3*x**2 + 2*x + 4*x*y + 2*y + 3*y**2 + y**3, x, y)
    got = {(i, j): c for (i, j), c in tutte(K4).terms.items()}
    assert got == {m: c for m, c in zip(want.monoms(), want.coeffs())}


# properties over the corpus

def test_tutte_spanning_trees_corpus():
    for g in multigraph_corpus(5):
        if len(__import__("pottskit.graph", fromlist=["components"]).components(g)) == 1:
            assert tutte(g).evaluate(1, 1) == spanning_trees(g)


def test_tutte_coefficients_nonnegative_corpus():
    for g in multigraph_corpus(5):
        assert all(c >= 0 and c.denominator == 1 for c in tutte(g).terms.values())


def test_chromatic_counts_corpus():
    for g in multigraph_corpus(5):
        p = chromatic(g)
        for n in (2, 3, 4):
            if n ** g.num_vertices <= 1 << 16:
                assert p.evaluate(n) == proper_colorings(g, n)


def test_flows_corpus():
    for g in multigraph_corpus(4):
        for n in (2, 3, 4, 5):
            c = flow(g).evaluate(n)
            assert c == flow_count_oracle(g, n, True)
            assert c == flow_count_oracle(g, n, True, reverse=True)
            assert complete_flow(g).evaluate(n) == flow_count_oracle(g, n, False)


def _subgraphs(g):
    return [g.edge_mask_subgraph(A) for A in range(1 << len(g))]


def test_flow_complete_flow_sums_corpus():
    for g in multigraph_corpus(4):
        subs = _subgraphs(g)
        total = UniPoly([])
        alt = UniPoly([])
        for A in subs:
            total = total + flow(A)
            alt = alt + (-1) ** (len(g) - len(A)) * complete_flow(A)
        assert total == complete_flow(g)
        assert alt == flow(g)


@given(multigraphs(), st.integers(1, 4), st.integers(1, 4))
def test_complete_flow_multiplicative(g, a, b):
    fc = complete_flow(g)
    assert fc.evaluate(a * b) == fc.evaluate(a) * fc.evaluate(b)


@given(multigraphs(max_vertices=3, max_edges=3), multigraphs(max_vertices=3, max_edges=3))
def test_tutte_multiplicative(g1, g2):
    assert tutte(disjoint_union(g1, g2)) == tutte(g1) * tutte(g2)
    assert tutte(one_point_join(g1, g2)) == tutte(g1) * tutte(g2)


@given(multigraphs(), st.integers(2, 3), rationals, nonzero)
def test_z_from_tutte_matches(g, n, a, b):
    if a == b:
        a += 1
    assert z_from_tutte(g, n, a, b) == partition_enumerate(PottsModel.isotropic(g, n, a, b))


@given(multigraphs())
def test_bad_coloring_properties(g):
    B = bad_coloring(g)
    assert B == bad_coloring_from_tutte(g)
    # t = 0 leaves the proper colourings
    n = UniPoly.x()
    b0 = B.substitute("t", 0)
    for k in (1, 2, 3):
        assert b0.evaluate(k, 0) == chromatic(g).evaluate(k)
    # B(n, t) = Z_n(t, 1)
    for k in (2, 3):
        assert B.evaluate(k, 5) == partition_enumerate(PottsModel.isotropic(g, k, 5, 1))


@given(multigraphs(max_edges=4))
def test_convolution_formula(g):
    assert verify_convolution_formula(g).is_zero()
