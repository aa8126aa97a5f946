import random

import pytest

from conftest import random_laurent, random_matrix, random_unimodular
from knotua.errors import DimensionMismatch, NotPrime
from knotua.laurent import ONE, ZERO, LaurentPoly, canonical, doteq, parse
from knotua.matrix import LaurentMatrix, determinant, parse_matrix
from knotua.orders import (
    Presentation,
    annihilation_check,
    fp_poly_to_laurent,
    is_prime,
    nakanishi_lower_bound,
    order_mod_p_matches,
    order_of_presentation,
    snf_over_fp,
)
from knotua.seifert import presentation_matrix

DELTA = parse("t - 1 + t^-1")


def block_upper(A, B, C):
    n, m = A.rows, C.rows
    rows = [list(A.row(i)) + list(B.row(i)) for i in range(n)]
    rows += [[ZERO] * n + list(C.row(i)) for i in range(m)]
    return LaurentMatrix(rows, n + m, n + m)


def test_order_examples(trefoil):
    assert order_of_presentation(LaurentMatrix.diag([parse("t - 1"), LaurentPoly(2)])) == parse("2t - 2")
    assert order_of_presentation(parse_matrix("2, t - 1")) == ONE
    assert doteq(order_of_presentation(presentation_matrix(trefoil)), parse("t^2 - t + 1"))
    assert order_of_presentation(LaurentMatrix([], 0, 0)) == ONE
    assert order_of_presentation(Presentation(LaurentMatrix.zeros(2, 1))) == ZERO


def test_annihilation_examples(trefoil):
    M = presentation_matrix(trefoil)
    assert annihilation_check(M, [ONE, ZERO])
    assert annihilation_check(M, [ONE, ONE])
    assert annihilation_check(LaurentMatrix.zeros(1, 1), [ONE])
    # pseudo-null module: order 1 but e is not in the span of [2, t - 1]
    assert not annihilation_check(parse_matrix("2, t - 1"), [ONE])
    with pytest.raises(DimensionMismatch):
        annihilation_check(M, [ONE])


def test_snf_examples(trefoil):
    snf = snf_over_fp(presentation_matrix(trefoil), 2)
    assert snf.nontrivial_count == 1
    assert snf.invariant_factors == ((1, 1, 1),)
    assert snf_over_fp(LaurentMatrix.diag([DELTA, DELTA]), 2).nontrivial_count == 2
    for p in (2, 3, 5):
        assert snf_over_fp(LaurentMatrix.identity(3), p).nontrivial_count == 0
    with pytest.raises(NotPrime):
        snf_over_fp(LaurentMatrix.identity(2), 4)


def test_nakanishi_examples(trefoil):
    assert nakanishi_lower_bound(presentation_matrix(trefoil), [2, 3, 5]) == 1
    assert nakanishi_lower_bound(LaurentMatrix.diag([DELTA, DELTA]), [2]) == 2
    assert nakanishi_lower_bound(LaurentMatrix.identity(2), [2, 3]) == 0


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_snf_divisibility_chain():
    from knotua._kernels import fp_divmod

    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 3)
        M = random_matrix(rng, n, n, span=2, height=3)
        for p in (2, 3, 5):
            f = snf_over_fp(M, p).invariant_factors
            for a, b in zip(f, f[1:]):
                assert fp_divmod(list(b), list(a), p)[1] == []


@pytest.mark.parametrize("seed", range(60))
def test_block_triangular_multiplicative(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 2), rng.randint(1, 2)
    A = random_matrix(rng, n, n)
    C = random_matrix(rng, m, m)
    B = random_matrix(rng, n, m)
    lhs = order_of_presentation(block_upper(A, B, C))
    assert doteq(lhs, order_of_presentation(A) * order_of_presentation(C))


@pytest.mark.parametrize("seed", range(40))
def test_order_invariant_under_invertible_operations(seed):
    rng = random.Random(500 + seed)
    n = rng.randint(1, 3)
    k = n + rng.randint(0, 1)
    M = random_matrix(rng, n, k)
    U = random_unimodular(rng, n)
    W = random_unimodular(rng, k)
    assert doteq(order_of_presentation(U @ M @ W), order_of_presentation(M))


@pytest.mark.parametrize("seed", range(30))
def test_order_annihilates_generators(seed):
    rng = random.Random(600 + seed)
    n = rng.randint(1, 3)
    M = random_matrix(rng, n, n)
    for i in range(n):
        e = [ONE if j == i else ZERO for j in range(n)]
        assert annihilation_check(M, e)


def _fp_order_reduction(order, p):
    c = [x % p for x in canonical(order).coeffs]
    while c and c[-1] == 0:
        c.pop()
    while c and c[0] == 0:
        c.pop(0)
    return c


@pytest.mark.parametrize("seed", range(40))
def test_snf_product_matches_order_mod_p(seed):
    rng = random.Random(700 + seed)
    n = rng.randint(1, 3)
    M = random_matrix(rng, n, n)
    order = order_of_presentation(M)
    for p in (2, 3, 5, 7):
        red = _fp_order_reduction(order, p)
        if not red:
            continue
        assert order_mod_p_matches(M, p)
        prod = ONE
        for f in snf_over_fp(M, p).invariant_factors:
            prod = prod * fp_poly_to_laurent(f)
        # compare as monic polynomials over F_p
        inv = pow(red[-1], -1, p)
        target = [(x * inv) % p for x in red]
        got = [x % p for x in prod.coeffs]
        assert got == target


def test_unknot_nakanishi_zero():
    assert nakanishi_lower_bound(LaurentMatrix([], 0, 0)) == 0
