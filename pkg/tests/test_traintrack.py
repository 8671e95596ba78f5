import pytest

from fixtures import EDGE16, VERTEX9, laurent_matrix
from support import load, random_chain_matrices
from teichpoly.errors import HypothesisViolated
from teichpoly.exact import IntegerMatrix
from teichpoly.oddblock import fixed_eigenspace, validate
from teichpoly.traintrack import (
    ALPHA,
    BETA,
    Edge,
    abelianize,
    build_train_track,
    chain_model,
    cover_decoration,
    edge_transition_matrix,
    free_reduce,
    induced_edge_map,
    induced_loop_map,
    invert,
    t_variables,
    vertex_lift_offsets,
    vertex_transition_matrix,
)


@pytest.fixture(scope="module")
def m8_track():
    A = validate(load("M8.txt"))
    p = chain_model(A)
    t = build_train_track(p)
    return A, p, t, cover_decoration(t, fixed_eigenspace(A))


def test_track_shape(m8_track):
    _, _, t, _ = m8_track
    assert len(t.edges) == 16 and len(t.vertices) == 9 and t.b1 == 8
    assert Edge(ALPHA, 3).tail == 2 and Edge(BETA, 3).tail == 3


def test_edge_matrix_equals_printed(m8_track):
    _, p, t, d = m8_track
    E = edge_transition_matrix(t, induced_edge_map(p), d)
    assert E == laurent_matrix(EDGE16)


def test_vertex_matrix_equals_printed(m8_track):
    _, p, t, d = m8_track
    assert vertex_transition_matrix(t, p, d) == laurent_matrix(VERTEX9)


def test_edge_matrix_at_t_one_is_the_plain_transition(m8_track):
    A, p, t, d = m8_track
    E = edge_transition_matrix(t, induced_edge_map(p), d).substitute({"t": 1}).to_integer()
    # each alpha and beta image covers one row support of M
    for e in t.edges:
        assert sum(E.row(t.edge_index(e))) == sum(A.M.row(e.index - 1))


def test_lift_offsets_start_at_zero(m8_track):
    _, p, t, d = m8_track
    s = vertex_lift_offsets(t, induced_edge_map(p), d)
    assert s[0] == (0,) and len(s) == 9


def test_loop_map_has_conjugated_form():
    for M in random_chain_matrices(12, sizes=(4, 6, 8), seed=17):
        A = validate(M)
        p = chain_model(A)
        L = induced_loop_map(p, build_train_track(p))
        for i in range(A.n):
            expected = free_reduce(L.conjugators[i] + L.middles[i] + invert(L.conjugators[i]))
            assert L.images[i] == expected


def test_loop_images_abelianize_to_rows(m8_track):
    A, p, t, d = m8_track
    L = induced_loop_map(p, t)
    x = fixed_eigenspace(A)[0]
    for i in range(A.n):
        # [psi(gamma_i)] is row i of M applied to x, which is x_i
        assert abelianize(L.images[i], d) == (x[i],)


def test_transpose_must_be_odd_block():
    # a valid matrix whose row 2 has a gap
    A = validate(IntegerMatrix([[0, 0, 1], [1, 0, 1], [0, 1, 1]]))
    with pytest.raises(HypothesisViolated):
        chain_model(A)


def test_free_group_helpers():
    assert free_reduce(((1, 1), (2, 1), (2, -1), (1, -1), (3, 1))) == ((3, 1),)
    assert invert(((1, 1), (2, -1))) == ((2, 1), (1, -1))
    assert t_variables(0) == () and t_variables(1) == ("t",) and t_variables(2) == ("t1", "t2")
