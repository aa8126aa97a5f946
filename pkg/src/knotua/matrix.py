"""Matrices over Z[t, t^-1] and exact algebra over its fraction field.

Text form: rows separated by ``;``, entries by ``,``, each entry in the
Laurent polynomial grammar, e.g. ``1 - t, t; -1, 1 - t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from knotua.errors import (
    BadMinorSize,
    DimensionMismatch,
    NonSquare,
    NonUnitTransform,
    ParseError,
    SingularMatrix,
)
from knotua.laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    as_laurent,
    canonical,
    evaluate,
    laurent_gcd,
    parse,
    render,
)


class LaurentMatrix:
    """Immutable dense matrix of :class:`LaurentPoly` entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable], rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(as_laurent(x) for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"entry count does not match {rows}x{cols}")
        self.rows, self.cols, self._e = rows, cols, data

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> LaurentMatrix:
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def diag(cls, entries: Sequence) -> LaurentMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_int(cls, M: Sequence[Sequence[int]], cols: int | None = None) -> LaurentMatrix:
        return cls([[LaurentPoly(int(x)) for x in row] for row in M], len(M), cols)

    @classmethod
    def column(cls, v: Sequence) -> LaurentMatrix:
        return cls([[x] for x in v], len(v), 1)

    # -- access ----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return LaurentMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.rows, self.cols
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return self + (-other)

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for r in self._e:
            out_row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return LaurentMatrix(out, self.rows, other.cols)

    def scale(self, p) -> LaurentMatrix:
        p = as_laurent(p)
        return LaurentMatrix([[p * x for x in r] for r in self._e], self.rows, self.cols)

    def apply(self, v: Sequence) -> list[LaurentPoly]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        v = [as_laurent(x) for x in v]
        out = []
        for r in self._e:
            acc = ZERO
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix([list(self.col(j)) for j in range(self.cols)], self.cols, self.rows)

    @property
    def T(self) -> LaurentMatrix:
        return self.transpose()

    def conjugate(self) -> LaurentMatrix:
        return LaurentMatrix([[x.conjugate() for x in r] for r in self._e], self.rows, self.cols)

    def hstack(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        return LaurentMatrix([a + b for a, b in zip(self._e, other._e)], self.rows, self.cols + other.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> LaurentMatrix:
        return LaurentMatrix([[self._e[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def evaluate(self, x) -> list[list[Fraction]]:
        return [[evaluate(e, x) for e in r] for r in self._e]

    def at_one(self) -> list[list[int]]:
        """Integer matrix obtained by setting t = 1."""
        return [[sum(e.coeffs) for e in r] for r in self._e]

    def mod_p_at(self, a: int, p: int) -> list[list[int]]:
        """Entries evaluated at t = a in F_p (a must be invertible mod p)."""
        return [[_eval_mod_p(e, a, p) for e in r] for r in self._e]

    def __str__(self):
        return render_matrix(self)

    def __repr__(self):
        return f"LaurentMatrix({render_matrix(self)!r}, {self.rows}x{self.cols})"


def _eval_mod_p(e: LaurentPoly, a: int, p: int) -> int:
    if e.is_zero():
        return 0
    acc = 0
    for c in reversed(e.coeffs):
        acc = (acc * a + c) % p
    return acc * pow(a, e.low, p) % p


def block_diag(*blocks: LaurentMatrix) -> LaurentMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[ZERO] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return LaurentMatrix(out, rows, cols)


# ---------------------------------------------------------------------------
# determinants and inverses

def determinant(M: LaurentMatrix) -> LaurentPoly:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Every division in Bareiss elimination is exact in an integral domain,
    so it is carried out directly in Z[t, t^-1].
    """
    if not M.is_square():
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return ONE
    a = M.tolist()
    sign, prev = 1, ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                q = num.exact_div(prev)
                assert q is not None, "Bareiss division must be exact"
                a[i][j] = q
        prev = akk
    return a[n - 1][n - 1] * sign


def cofactor_determinant(M: LaurentMatrix) -> LaurentPoly:
    """Laplace expansion along the first row; exponential, for cross-checks."""
    if not M.is_square():
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return ONE
    if n == 1:
        return M[0, 0]
    acc = ZERO
    for j in range(n):
        if M[0, j]:
            minor = M.submatrix(range(1, n), [c for c in range(n) if c != j])
            term = M[0, j] * cofactor_determinant(minor)
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def adjugate(M: LaurentMatrix) -> LaurentMatrix:
    if not M.is_square():
        raise NonSquare(f"adjugate of a {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return M
    if n == 1:
        return LaurentMatrix([[ONE]], 1, 1)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = M.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            d = determinant(minor)
            out[i][j] = d if (i + j) % 2 == 0 else -d
    return LaurentMatrix(out, n, n)


@dataclass(frozen=True)
class RationalFunctionMatrix:
    """Matrix over Q(t) written as ``numerators / common_denominator``."""

    numerators: LaurentMatrix
    common_denominator: LaurentPoly

    def __post_init__(self):
        if self.common_denominator.is_zero():
            raise SingularMatrix("zero common denominator")

    def entry(self, i: int, j: int) -> tuple[LaurentPoly, LaurentPoly]:
        return self.numerators[i, j], self.common_denominator

    def integral(self) -> LaurentMatrix | None:
        """The matrix itself if every entry lies in Z[t, t^-1], else None."""
        d = self.common_denominator
        out = []
        for r in self.numerators.tolist():
            row = []
            for x in r:
                q = x.exact_div(d)
                if q is None:
                    return None
                row.append(q)
            out.append(row)
        return LaurentMatrix(out, self.numerators.rows, self.numerators.cols)

    def left_multiply(self, M: LaurentMatrix) -> RationalFunctionMatrix:
        return RationalFunctionMatrix(M @ self.numerators, self.common_denominator)

    def right_multiply(self, M: LaurentMatrix) -> RationalFunctionMatrix:
        return RationalFunctionMatrix(self.numerators @ M, self.common_denominator)


def inverse_over_fraction_field(M: LaurentMatrix) -> RationalFunctionMatrix:
    """M^-1 as adjugate over determinant."""
    d = determinant(M)
    if d.is_zero():
        raise SingularMatrix("matrix has zero determinant")
    return RationalFunctionMatrix(adjugate(M), d)


def inverse_unimodular(U: LaurentMatrix) -> LaurentMatrix:
    """Inverse of a matrix whose determinant is a unit +-t^k."""
    d = determinant(U)
    if not d.is_unit():
        raise NonUnitTransform(f"determinant {d} is not a unit")
    inv = inverse_over_fraction_field(U).integral()
    assert inv is not None
    return inv


# ---------------------------------------------------------------------------
# hermitian structure

def hermitian_conjugate(M: LaurentMatrix) -> LaurentMatrix:
    """Transpose with every entry conjugated."""
    return M.conjugate().transpose()


def is_hermitian(M: LaurentMatrix) -> bool:
    if not M.is_square():
        raise NonSquare(f"{M.rows}x{M.cols} matrix cannot be hermitian")
    n = M.rows
    return all(M[j, i] == M[i, j].conjugate() for i in range(n) for j in range(i, n))


def congruence(A: LaurentMatrix, U: LaurentMatrix) -> LaurentMatrix:
    """conj-transpose(U) * A * U, for U with unit determinant."""
    if not A.is_square():
        raise NonSquare("congruence needs a square form")
    if U.rows != A.rows or not U.is_square():
        raise DimensionMismatch(f"transform {U.shape} does not fit form {A.shape}")
    d = determinant(U)
    if not d.is_unit():
        raise NonUnitTransform(f"det(U) = {d} is not of the form +-t^k")
    return hermitian_conjugate(U) @ A @ U


# ---------------------------------------------------------------------------
# minors

def minors_gcd(M: LaurentMatrix, k: int) -> LaurentPoly:
    """Canonical gcd of all k x k minors of M (0 if they all vanish)."""
    if k < 0 or k > min(M.rows, M.cols):
        raise BadMinorSize(f"no {k}x{k} minors in a {M.rows}x{M.cols} matrix")
    if k == 0:
        return ONE
    g = ZERO
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            d = determinant(M.submatrix(rows, cols))
            if d:
                g = laurent_gcd(g, d)
                if g == ONE:
                    return g
    return canonical(g)


# ---------------------------------------------------------------------------
# text form

def render_matrix(M: LaurentMatrix) -> str:
    return "; ".join(", ".join(render(x) for x in r) for r in M.tolist())


def parse_matrix(text: str) -> LaurentMatrix:
    """Parse ``a, b; c, d``. The empty string is the 0x0 matrix."""
    text = text.strip()
    if not text:
        return LaurentMatrix([], 0, 0)
    rows = []
    for chunk in text.split(";"):
        if not chunk.strip():
            raise ParseError(f"empty row in matrix {text!r}")
        rows.append([parse(e) for e in chunk.split(",")])
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError(f"ragged matrix {text!r}")
    return LaurentMatrix(rows, len(rows), width)
