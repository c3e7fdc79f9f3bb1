from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pottskit import biggs as bg
from pottskit.corpus import k3, multigraph_corpus
from pottskit.graph import Multigraph
from pottskit.partition import ModelError, PottsModel, partition_enumerate
from strategies import isotropic, multigraphs, nonzero, rationals


def G(v, pairs):
    return Multigraph.from_pairs(v, pairs)


def test_coeff_examples():
    m = isotropic(k3(), 3, 2, 5)
    c = bg.biggs_coeffs(m, m)
    assert c.p == (1, 1, 1) and c.q == (0, 0, 0)
    for n in (2, 3, 5):
        c = bg.biggs_coeffs(isotropic(k3(), n, 0, 1), isotropic(k3(), n, 1 - n, 1))
        assert c.p[0] == Fraction(1, n) and c.q[0] == Fraction(n - 1, n)
    a, b = Fraction(7, 3), Fraction(-2)
    c = bg.biggs_coeffs(isotropic(k3(), 2, a, b), isotropic(k3(), 2, 0, 1))
    assert c.p[0] == b - a and c.q[0] == a
    with pytest.raises(bg.PreconditionError):
        bg.biggs_coeffs(m, isotropic(k3(), 3, 4, 4))
    with pytest.raises(ModelError):
        bg.biggs_coeffs(m, isotropic(k3(), 2, 1, 2))


@given(st.integers(2, 4), rationals, nonzero, rationals, nonzero)
def test_linear_relation(n, a1, b1, a2, b2):
    if a2 == b2:
        return
    c = bg.biggs_coeffs(isotropic(G(2, [(0, 1)]), n, a1, b1), isotropic(G(2, [(0, 1)]), n, a2, b2))
    assert c.p[0] * a2 + c.q[0] == a1
    assert c.p[0] * b2 + c.q[0] == b1


def test_biggs_examples():
    m = isotropic(k3(), 2, 3, 1)
    assert bg.verify_biggs(m, m) == 0
    assert bg.verify_biggs(m, isotropic(k3(), 2, 5, 2)) == 0
    path = G(4, [(0, 1), (1, 2), (2, 3)])
    w1 = ((Fraction(1), Fraction(2)), (Fraction(-3), Fraction(1, 2)), (Fraction(2), Fraction(5)))
    w2 = ((Fraction(4), Fraction(1)), (Fraction(1, 3), Fraction(2)), (Fraction(-1), Fraction(1)))
    assert bg.verify_biggs(PottsModel(path, 3, w1), PottsModel(path, 3, w2)) == 0


def test_biggs_rhs_unnormalised_k3():
    # Z(K3; 3, 1) = 72 reproduced through a second model
    assert bg.biggs_rhs(isotropic(k3(), 2, 3, 1), isotropic(k3(), 2, 5, 2)) == 72


@given(multigraphs(max_edges=4), st.integers(2, 3), st.data())
def test_biggs_random(g, n, data):
    w1 = tuple((data.draw(rationals), data.draw(rationals)) for _ in g.edges)
    w2 = []
    for _ in g.edges:
        a, b = data.draw(rationals), data.draw(rationals)
        w2.append((a, b if b != a else b + 1))
    assert bg.verify_biggs(PottsModel(g, n, w1), PottsModel(g, n, tuple(w2))) == 0


def test_matiyasevich_examples():
    assert bg.verify_matiyasevich(k3(), 3) == 0
    assert bg.chromatic_values(k3(), 3)[-1] == 6
    for n in (2, 3, 7):
        assert bg.verify_matiyasevich(G(2, [(0, 1)]), n) == 0
    assert bg.verify_matiyasevich(G(4, [(0, 1), (2, 3)]), 2) == 0
    with pytest.raises(ValueError):
        bg.verify_matiyasevich(k3(), 1)


def test_four_formula_examples():
    assert bg.verify_four_formulas(k3(), 2, 3, 1) == (0, 0, 0, 0)
    assert bg.verify_four_formulas(G(2, [(0, 1)]), 3, 2, 1) == (0, 0, 0, 0)
    # alpha = beta exercises the cleared fourth formula
    assert bg.verify_four_formulas(k3(), 3, 2, 2) == (0, 0, 0, 0)


@given(multigraphs(max_edges=4), st.integers(2, 4), rationals, rationals)
def test_four_formulas_random(g, n, a, b):
    assert bg.verify_four_formulas(g, n, a, b) == (0, 0, 0, 0)


def test_shift_examples():
    assert bg.verify_order_shift_product(k3(), 2, 2, 3, 1) == 0
    assert bg.verify_order_shift_product(G(2, [(0, 1)]), 2, 3, 3, 1) == 0
    # Z_6(edge) = 6 alpha + 30 beta, the quantity reproduced above
    assert partition_enumerate(isotropic(G(2, [(0, 1)]), 6, 3, 1)) == 6 * 3 + 30
    for n1, n2 in ((2, 3), (1, 4)):
        assert bg.verify_order_shift_product(G(1, [(0, 0)]), n1, n2, 5, 2) == 0
    with pytest.raises(bg.PreconditionError):
        bg.verify_order_shift_product(k3(), 2, 2, 1, 1)
    assert bg.verify_order_shift_sum(G(2, [(0, 1)]), 2, 1, 2, 1) == 0
    assert bg.verify_order_shift_sum(k3(), 2, 2, 3, 1) == 0
    assert bg.verify_order_shift_sum(G(1, []), 2, 3, 3, 1) == 0


def test_vertex_convolution_examples():
    assert bg.verify_tutte_vertex_convolution(G(2, [(0, 1)]), 1, 1) == 0
    assert bg.verify_tutte_vertex_convolution(k3(), 1, 2) == 0
    assert bg.verify_tutte_vertex_convolution(G(0, []), 2, 3) == 0


@given(multigraphs(max_vertices=4, max_edges=4), st.integers(1, 3), st.integers(1, 3),
       rationals, nonzero)
def test_shift_random(g, n1, n2, a, b):
    if a == b:
        a += 1
    assert bg.verify_order_shift_sum(g, n1, n2, a, b) == 0
    assert bg.verify_tutte_vertex_convolution(g, n1, n2) == 0
    if (n1 * n2) ** g.num_vertices <= 1 << 20:
        assert bg.verify_order_shift_product(g, n1, n2, a, b) == 0


def test_fourteen_term_base_and_pendant():
    for extra in ((), ((0, 4),)):
        inst = bg.build_14_term_instance(bg.star_ambient(extra), seed=3)
        assert inst.constraint_residual < 1e-12
        assert bg.verify_14_term(inst.m1, inst.m2, inst.centre) < 1e-9


def test_fourteen_term_weights_off_star_irrelevant():
    amb = bg.star_ambient(((0, 4), (4, 1)))
    a = bg.build_14_term_instance(amb, seed=5, extra_weights={3: (2.0, 1.0), 4: (0.5, 1.5)})
    b = bg.build_14_term_instance(amb, seed=5, extra_weights={3: (1.2, 0.7), 4: (3.0, 1.0)})
    assert bg.verify_14_term(a.m1, a.m2, 3) < 1e-9
    assert bg.verify_14_term(b.m1, b.m2, 3) < 1e-9


def test_fourteen_term_needs_constraint():
    inst = bg.build_14_term_instance(seed=1)
    w = list(inst.m1.weights)
    w[0] = (w[0][0] * 1.5, w[0][1])
    bad = PottsModel(inst.m1.graph, 2, tuple(w))
    with pytest.raises(bg.PreconditionError):
        bg.verify_14_term(bad, inst.m2, 3)
    with pytest.raises(bg.PreconditionError):
        bg.verify_14_term(inst.m2, inst.m2, 3)
