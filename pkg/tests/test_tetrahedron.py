import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pottskit import tetrahedron as T
from pottskit.partition import BoundarySpec, boundary_partition
from pottskit.startriangle import f_map, s_involution

cone = st.floats(1.05, 6.0)
nonunit = st.floats(0.2, 5.0).filter(lambda x: abs(x - 1) > 0.05)


@given(st.sampled_from([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]), nonunit)
def test_orthogonality(plane, t):
    assert T.orthogonality_residual(4, plane, t) < 1e-13


def test_r_matrix_examples():
    R = T.r_matrix(3, (0, 1), 1.0)
    assert np.allclose(R, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    R = T.r_matrix(4, (0, 2), 2.0)
    assert R[0, 0] == 0.75j and R[2, 2] == -0.75j and R[0, 2] == R[2, 0] == 1.25
    assert R[1, 1] == R[3, 3] == 1
    with pytest.raises(T.TetraError):
        T.r_matrix(3, (0, 1), 0)


def test_lyb_examples():
    assert T.verify_lyb((2, 3, 4)) < 1e-12
    assert T.verify_lyb((1 + 1e-6, 2, 3)) < 1e-10
    assert T.verify_lyb((2, 3, 4), dps=None) < 1e-12
    with pytest.raises(T.TetraError):
        T.verify_lyb((1, 2, 3))


@settings(max_examples=40)
@given(cone, cone, cone)
def test_lyb_property(a, b, c):
    assert T.verify_lyb((a, b, c)) < 1e-12


def test_lyb_wrong_direction_fails():
    # t' = F(t) instead of F^-1(t) does not satisfy the relation
    assert T.verify_lyb((2, 3, 4), inverse=f_map) > 1e-3


@settings(max_examples=40)
@given(cone, cone, cone)
def test_closed_form(a, b, c):
    assert T.closed_form_residual((a, b, c)) < 1e-12


def test_closed_form_entry():
    M = T.lyb_closed_form((2.0, 3.0, 4.0))
    assert M[2, 0] == (9 + 1) / (9 - 1)
    assert T.closed_form_residual((2, 3, 4)) < 1e-12


def test_standard_word():
    t = (1.5, 2, 2.5, 3, 1.2, 1.8)
    w = T.standard_word(t)
    assert [f.plane for f in w] == list(T.STANDARD_PLANES)
    assert w[1].value == s_involution(2) and w[4].value == s_involution(1.2)
    U = T.six_r_product(t)
    assert abs(U[0, 3] - T.b_fn(3)) < 1e-14


@settings(max_examples=25)
@given(st.tuples(*[st.floats(1.1, 4.0)] * 6))
def test_six_r_invariance(t):
    for seq in (T.SEQUENCE_FORWARD, T.SEQUENCE_BACKWARD):
        _, drift = T.run_sequence(t, seq)
        assert drift < 1e-8
    assert T.sequences_agree(t) < 1e-8
    assert max(T.element_identities(t).values()) < 1e-8


def test_lyb_move_rejects_non_triangle():
    w = T.standard_word((1.5, 2, 2.5, 3, 1.2, 1.8))
    with pytest.raises(T.TetraError):
        T.lyb_move(w, (1, 2, 6))


@settings(max_examples=40)
@given(st.sampled_from([123, 145, 246, 356]), st.sampled_from(["F", "phi"]),
       st.tuples(*[st.floats(1.1, 4.0)] * 6))
def test_tetra_map_roundtrip(which, form, t):
    u = T.tetra_map(which, t, "forward", form)
    back = T.tetra_map(which, u, "inverse", form)
    assert np.allclose(back, t, rtol=1e-9)
    untouched = set(range(6)) - {int(c) - 1 for c in str(which)}
    assert all(u[i] == t[i] for i in untouched)


def test_tetra_map_errors():
    t = (1.5, 2, 2.5, 3, 1.2, 1.8)
    with pytest.raises(T.TetraError):
        T.tetra_map(124, t)
    with pytest.raises(T.TetraError):
        T.tetra_map(123, t, form="G")


def test_tetrahedron_seed_42():
    rep = T.verify_tetrahedron(100, 42)
    assert rep.accepted == 100 and rep.max_residual < 1e-8
    assert set(rep.to_json()) == {"accepted", "rejected", "max_residual", "per_equation"}


def test_tetrahedron_deterministic():
    a = T.verify_tetrahedron(5, 7)
    b = T.verify_tetrahedron(5, 7)
    assert a == b


def test_tetrahedron_rejection_path():
    # a symmetric tuple at t = 1 sits on a pole and is rejected, not counted
    with pytest.raises(T.TetraError):
        T.tetra_sides((1.0,) * 6)
    rep = T.verify_tetrahedron(3, 0, lo=1.0, hi=1.0 + 1e-12, max_draws=5)
    assert rep.accepted == 0 and rep.rejected == 5


def test_tetrahedron_s_dressing_fails():
    # documented: the literal S dressing does not satisfy the equation
    rep = T.verify_tetrahedron(10, 42, dressing="S")
    assert rep.max_residual > 1.0


def test_tetrahedron_off_cone_fails():
    # documented: sampling [1/4, 4] leaves the branch on which the maps compose
    rep = T.verify_tetrahedron(20, 42, lo=0.25)
    assert rep.max_residual > 1.0


def test_double_precision_tetrahedron_is_weaker():
    rep = T.verify_tetrahedron(20, 42, dps=None)
    assert rep.accepted == 20 and rep.max_residual < 1e-6


def test_gamma_fixtures():
    fx = T.gamma_fixtures()
    assert set(fx) == {"gamma1", "gamma2", "standard"}
    for name in ("gamma1", "gamma2"):
        g, boundary = fx[name]
        assert g.num_vertices == 6 and len(g.edges) == 6 and boundary == (0, 1, 2, 3)
    g, _ = fx["standard"]
    assert len(g.edges) == 16


def test_boundary_sum():
    t = (2, 3, Fraction(1, 2), 5, 4, Fraction(3, 2))
    vals = T.boundary_values(t)
    assert len(vals) == 16
    from pottskit.partition import partition_fk
    assert sum(vals.values()) == partition_fk(T.gamma2_model(t))


def test_reconstruction_example():
    t = (2, 3, Fraction(1, 2), 5, 4, Fraction(3, 2))
    got = T.reconstruct_from_boundary(T.boundary_values(t))
    assert np.allclose(got, (2, 3, 0.5, 5, 4, 1.5), rtol=1e-12)
    scaled = {k: v * Fraction(73, 10) for k, v in T.boundary_values(t).items()}
    assert np.allclose(T.reconstruct_from_boundary(scaled), got, rtol=1e-12)


def test_auxiliary_relations():
    t = (2, 3, Fraction(1, 2), 5, 4, Fraction(3, 2))
    aux = T.auxiliary_variables(T.boundary_values(t), 2, 3)
    assert abs(aux["z1"] / aux["x1"] - aux["v"] / aux["y"]) < 1e-25
    assert abs(aux["v1"] / aux["x1"] - aux["v"] / aux["x"]) < 1e-25
    with pytest.raises(T.TetraError):
        T.auxiliary_variables(T.boundary_values(t), 1, 3)


def test_reconstruction_gauge():
    t = (0.5, 3, 2, 5, 4, 1.5)
    got = T.reconstruct_from_boundary(T.boundary_values(t))
    assert np.allclose(got, T.canonical_gauge(t), rtol=1e-12)
    assert T.canonical_gauge(t)[0] == 2


def test_reconstruction_random():
    rng = random.Random(5)
    for _ in range(20):
        t = tuple(Fraction(rng.randint(1, 16), 4) for _ in range(6))
        if 1 in t:
            # an edge with t = 1 decouples and the data cannot see it
            with pytest.raises(T.TetraError):
                T.reconstruct_from_boundary(T.boundary_values(t))
            continue
        got = T.reconstruct_from_boundary(T.boundary_values(t))
        assert np.allclose(got, [float(x) for x in T.canonical_gauge(t)], rtol=1e-9)


def test_reconstruction_rejects_inconsistent_data():
    vals = {A: 1 + sum(A) + A[0] * A[3] * 5 for A in itertools.product((0, 1), repeat=4)}
    with pytest.raises(T.TetraError):
        T.reconstruct_from_boundary(vals)


def test_boundary_value_matches_direct():
    t = (2, 3, Fraction(1, 2), 5, 4, Fraction(3, 2))
    m = T.gamma2_model(t)
    assert T.boundary_values(t)[(0, 1, 1, 0)] == boundary_partition(m, BoundarySpec((0, 1, 2, 3), (0, 1, 1, 0)))
