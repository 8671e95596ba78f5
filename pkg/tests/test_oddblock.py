from fractions import Fraction

import numpy as np
import pytest

from support import load, matrix_from_phi
from teichpoly.errors import (
    AmbiguousPhi,
    Inconclusive,
    MatrixFormatError,
    NoPhiExists,
    NotAperiodic,
    NotOddBlock,
    Singular,
)
from teichpoly.exact import IntegerMatrix
from teichpoly.oddblock import (
    DECREASING,
    INCREASING,
    build_pl_model,
    fixed_eigenspace,
    format_matrix,
    parse_matrix_text,
    perron_data,
    validate,
)


def test_m8_endpoint_map_and_directions():
    A = validate(load("M8.txt"))
    assert A.phi == (7, 5, 8, 3, 6, 1, 4, 0, 2)
    assert A.directions == (DECREASING, INCREASING) * 4
    assert A.binary and not A.singular
    p = build_pl_model(A)
    assert p.critical == tuple(range(1, 8))
    assert p.is_local_max(2) and not p.is_local_max(1)


def test_small_fixtures():
    assert validate(load("F2.txt")).phi == (2, 0, 1)
    G = validate(load("G2.txt"))
    assert G.phi == (1, 0, 2)
    assert not G.binary and G.directions is None


def test_phi_reconstructs_binary_matrix():
    for phi in [(2, 0, 1), (7, 5, 8, 3, 6, 1, 4, 0, 2), (1, 4, 0, 3, 2)]:
        M = matrix_from_phi(phi)
        A = validate(M, allow_singular=True)
        assert A.phi == phi
        assert matrix_from_phi(A.phi) == M


def test_condition_i_failure_reports_column():
    with pytest.raises(NotOddBlock) as exc:
        validate(load("notoddblock.txt"))
    assert exc.value.condition == "i" and exc.value.column == 2


def test_condition_ii_failure():
    # column 1 has odd entries at rows 1 and 3 only
    with pytest.raises(NotOddBlock) as exc:
        validate(IntegerMatrix([[1, 1, 0], [2, 1, 1], [1, 0, 1]]))
    assert exc.value.condition == "ii"


def test_no_endpoint_map():
    # odd blocks [1,1] and [2,2] in columns 1 and 2 never chain
    with pytest.raises(NoPhiExists):
        validate(IntegerMatrix([[1, 0, 1], [0, 0, 1], [0, 1, 1]]))


def test_ambiguous_endpoint_map():
    # an all-even column leaves phi(0) free
    with pytest.raises(AmbiguousPhi) as exc:
        validate(IntegerMatrix([[2, 2], [2, 2]]))
    assert len(exc.value.solutions) > 1


def test_singular_and_aperiodic_checks():
    with pytest.raises(Singular):
        validate(matrix_from_phi((0, 1, 0, 2)))
    with pytest.raises(NotAperiodic):
        validate(IntegerMatrix.identity(3))


def test_perron_data_m8():
    A = validate(load("M8.txt"))
    pd = perron_data(A, Fraction(1, 10**30))
    assert pd.lam.width <= Fraction(1, 10**30)
    assert abs(float(pd.lam.mid) - 3.47063911391) < 1e-10
    assert pd.consecutive_distinct
    assert pd.partition[0].contains(0) and pd.partition[-1].contains(1)
    # widths are a left eigenvector of M
    M = A.M
    for j in range(8):
        acc = sum((pd.v[i] * M[i, j] for i in range(8) if M[i, j]), start=pd.v[0] * 0)
        assert (acc - pd.lam * pd.v[j]).contains(0)


def test_perron_data_inconclusive_when_entries_equal():
    # a symmetry of this map forces v_2 = v_3 exactly
    A = validate(matrix_from_phi((1, 4, 2, 0, 3)))
    with pytest.raises(Inconclusive):
        perron_data(A, Fraction(1, 10**8), max_bits=200)
    assert not perron_data(A, Fraction(1, 10**8), require_distinct=False, max_bits=200).consecutive_distinct


def test_perron_vector_against_numpy():
    A = validate(load("M8.txt"))
    pd = perron_data(A, Fraction(1, 10**20))
    w, vecs = np.linalg.eig(A.M.T.to_numpy().astype(float))
    ref = np.abs(vecs[:, int(np.argmax(w.real))].real)
    ref /= ref.sum()
    assert np.allclose([float(x.mid) for x in pd.v], ref, atol=1e-12)


def test_fixed_eigenspace():
    assert fixed_eigenspace(validate(load("M8.txt"))) == [(1, 0, 0, 0, -1, 0, 1, 0)]
    assert fixed_eigenspace(validate(load("F2.txt"))) == []


def test_matrix_text_round_trip():
    M = load("M8.txt")
    text = format_matrix(M, ["a comment", ""])
    assert text.startswith("# a comment\n#\n8\n")
    assert parse_matrix_text(text) == M


@pytest.mark.parametrize(
    "text",
    ["", "x\n", "2\n1 1\n", "2\n1 1\n1\n", "2\n1 a\n1 1\n", "2\n1 -1\n1 1\n", "0\n"],
)
def test_matrix_format_errors(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix_text(text)
