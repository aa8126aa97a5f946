import random

import pytest

from knotua.laurent import LaurentPoly
from knotua.matrix import LaurentMatrix
from knotua.report import bundled_certificates, bundled_table
from knotua.seifert import validate_seifert

TREFOIL = [[-1, 1], [0, -1]]
FIGURE_EIGHT = [[1, 1], [0, -1]]


@pytest.fixture(scope="session")
def table():
    return {rec.name: rec for rec in bundled_table()}


@pytest.fixture(scope="session")
def bundled_certs():
    return bundled_certificates()


@pytest.fixture
def trefoil():
    return validate_seifert(TREFOIL)


@pytest.fixture
def figure_eight():
    return validate_seifert(FIGURE_EIGHT)


def random_laurent(rng: random.Random, span: int = 2, height: int = 3, low=None) -> LaurentPoly:
    if low is None:
        low = rng.randint(-span, span)
    return LaurentPoly.from_coeffs(low, [rng.randint(-height, height) for _ in range(span + 1)])


def random_matrix(rng, rows, cols, span=2, height=3) -> LaurentMatrix:
    return LaurentMatrix([[random_laurent(rng, span, height) for _ in range(cols)] for _ in range(rows)], rows, cols)


def random_unimodular(rng, n, steps=4, span=1, height=2) -> LaurentMatrix:
    """Random product of elementary, unit-diagonal and permutation matrices."""
    from knotua.laurent import ONE, ZERO

    U = LaurentMatrix.identity(n)
    for _ in range(steps):
        kind = rng.random()
        rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        if kind < 0.6 and n > 1:
            i, j = rng.sample(range(n), 2)
            rows[i][j] = random_laurent(rng, span, height)
        elif kind < 0.8:
            i = rng.randrange(n)
            rows[i][i] = LaurentPoly.monomial(rng.choice((1, -1)), rng.randint(-2, 2))
        elif n > 1:
            i, j = rng.sample(range(n), 2)
            rows[i], rows[j] = rows[j], rows[i]
        U = U @ LaurentMatrix(rows, n, n)
    return U
