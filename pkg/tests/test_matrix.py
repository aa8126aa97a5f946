import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_laurent, random_matrix, random_unimodular
from knotua.errors import BadMinorSize, NonSquare, NonUnitTransform, ParseError, SingularMatrix
from knotua.laurent import ONE, T, T_INV, ZERO, LaurentPoly, canonical, doteq, parse
from knotua.matrix import (
    LaurentMatrix,
    adjugate,
    block_diag,
    cofactor_determinant,
    congruence,
    determinant,
    hermitian_conjugate,
    inverse_over_fraction_field,
    inverse_unimodular,
    is_hermitian,
    minors_gcd,
    parse_matrix,
    render_matrix,
)

DELTA = parse("t - 1 + t^-1")
TREFOIL_M = parse_matrix("-t + 1, t; -1, -t + 1")


def random_hermitian(rng, n):
    B = random_matrix(rng, n, n, span=1, height=2)
    return B + hermitian_conjugate(B)


def test_trefoil_presentation_matches_seifert(trefoil):
    from knotua.seifert import presentation_matrix

    assert presentation_matrix(trefoil) == TREFOIL_M


def test_determinant_examples():
    assert determinant(TREFOIL_M) == parse("t^2 - t + 1")
    assert determinant(LaurentMatrix.identity(5)) == ONE
    assert determinant(parse_matrix("t, 1; 1, t^-1")) == ZERO
    assert determinant(LaurentMatrix([], 0, 0)) == ONE


def test_determinant_non_square():
    with pytest.raises(NonSquare):
        determinant(LaurentMatrix.zeros(2, 3))


def test_inverse_examples():
    inv = inverse_over_fraction_field(LaurentMatrix([[DELTA]], 1, 1))
    assert inv.numerators == LaurentMatrix([[ONE]], 1, 1) and inv.common_denominator == DELTA
    inv = inverse_over_fraction_field(TREFOIL_M)
    assert inv.numerators == parse_matrix("1 - t, -t; 1, 1 - t")
    assert inv.common_denominator == parse("t^2 - t + 1")
    inv = inverse_over_fraction_field(LaurentMatrix.identity(2))
    assert inv.numerators == LaurentMatrix.identity(2) and inv.common_denominator == ONE
    with pytest.raises(SingularMatrix):
        inverse_over_fraction_field(LaurentMatrix.zeros(2, 2))


def test_hermitian_examples():
    H = parse_matrix("2 - t - t^-1, 1 - t; 1 - t^-1, 5")
    assert hermitian_conjugate(H) == H and is_hermitian(H)
    assert hermitian_conjugate(LaurentMatrix([[T]], 1, 1)) == LaurentMatrix([[T_INV]], 1, 1)
    Z = LaurentMatrix.zeros(2, 3)
    assert hermitian_conjugate(Z) == LaurentMatrix.zeros(3, 2)
    assert is_hermitian(LaurentMatrix([[DELTA]], 1, 1))
    assert not is_hermitian(LaurentMatrix([[T]], 1, 1))
    with pytest.raises(NonSquare):
        is_hermitian(Z)


def test_seifert_hermitian_construction():
    rng = random.Random(3)
    for _ in range(20):
        V = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
        Vm = LaurentMatrix.from_int(V)
        H = Vm.scale(ONE - T) + Vm.transpose().scale(ONE - T_INV)
        assert is_hermitian(H)


def test_congruence_examples():
    A = parse_matrix("t + t^-1, 1; 1, 3")
    assert congruence(A, LaurentMatrix.identity(2)) == A
    D = LaurentMatrix([[DELTA]], 1, 1)
    assert congruence(D, LaurentMatrix([[T]], 1, 1)) == D
    f, g = parse("t - 3 + t^-1"), DELTA
    swap = parse_matrix("0, 1; 1, 0")
    assert congruence(LaurentMatrix.diag([f, g]), swap) == LaurentMatrix.diag([g, f])
    with pytest.raises(NonUnitTransform):
        congruence(A, parse_matrix("2, 0; 0, 1"))


def test_minors_gcd_examples():
    assert minors_gcd(parse_matrix("2, t - 1"), 1) == ONE
    f, g = parse("t - 3 + t^-1"), parse("t^2 + 2")
    assert minors_gcd(LaurentMatrix.diag([f, g]), 2) == canonical(f * g)
    assert minors_gcd(LaurentMatrix.zeros(2, 2), 1) == ZERO
    with pytest.raises(BadMinorSize):
        minors_gcd(LaurentMatrix.zeros(2, 2), 3)


def test_render_parse_matrix():
    assert render_matrix(TREFOIL_M) == "-t + 1, t; -1, -t + 1"
    assert parse_matrix(render_matrix(TREFOIL_M)) == TREFOIL_M
    with pytest.raises(ParseError):
        parse_matrix("1, 2; 3")


def test_block_diag():
    B = block_diag(LaurentMatrix([[T]], 1, 1), LaurentMatrix.identity(2))
    assert B.shape == (3, 3) and determinant(B) == T


@pytest.mark.parametrize("seed", range(40))
def test_bareiss_matches_cofactor(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    M = random_matrix(rng, n, n)
    assert determinant(M) == cofactor_determinant(M)


@pytest.mark.parametrize("seed", range(25))
def test_determinant_multiplicative(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 3)
    M, N = random_matrix(rng, n, n, span=1), random_matrix(rng, n, n, span=1)
    assert determinant(M @ N) == determinant(M) * determinant(N)


@pytest.mark.parametrize("seed", range(25))
def test_adjugate_and_inverse(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 4)
    M = random_matrix(rng, n, n)
    d = determinant(M)
    assert M @ adjugate(M) == LaurentMatrix.identity(n).scale(d)
    if d:
        inv = inverse_over_fraction_field(M)
        prod = inv.left_multiply(M)
        assert prod.numerators == LaurentMatrix.identity(n).scale(prod.common_denominator)


@pytest.mark.parametrize("seed", range(25))
def test_congruence_properties(seed):
    rng = random.Random(300 + seed)
    n = rng.randint(1, 3)
    A = random_hermitian(rng, n)
    U = random_unimodular(rng, n)
    dU = determinant(U)
    assert dU.is_unit()
    C = congruence(A, U)
    assert is_hermitian(C)
    assert determinant(C) == determinant(A) * dU * dU.conjugate()
    assert doteq(determinant(C), determinant(A))
    assert inverse_unimodular(U) @ U == LaurentMatrix.identity(n)


@pytest.mark.parametrize("seed", range(25))
def test_minors_gcd_square_equals_det(seed):
    rng = random.Random(400 + seed)
    n = rng.randint(1, 3)
    M = random_matrix(rng, n, n)
    assert minors_gcd(M, n) == canonical(determinant(M))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_evaluation_commutes_with_determinant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    M = random_matrix(rng, n, n, span=1)
    from knotua import intmat

    assert determinant(M)(1) == intmat.det(M.at_one())
