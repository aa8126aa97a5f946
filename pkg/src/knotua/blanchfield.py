"""Blanchfield pairing and the linking forms lambda(A), valued in Q(t)/Z[t, t^-1].

Convention: for the presentation M = tV - V^T of the Alexander module
(generators = rows), the pairing of basis vectors is

    Bl(e_i, e_j) = ((t - 1) M^-1)_ij   mod Z[t, t^-1],

extended by Bl(x, y) = conj(x)^T (t - 1) M^-1 y. The matrix (t - 1) M^-1
is exactly hermitian, and (t - 1) M^-1 M is integral, so the pairing is
well defined on the quotient module. Every other sign or variable
convention in use differs from this one by an isometry; certificates are
checked against this one.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from knotua.errors import (
    ConventionSelfCheckFailed,
    DimensionMismatch,
    NotHermitian,
    SingularMatrix,
)
from knotua.laurent import ONE, ZERO, LaurentPoly, T, as_laurent, render
from knotua.matrix import LaurentMatrix, adjugate, determinant, is_hermitian
from knotua.seifert import SeifertMatrix, alexander_polynomial, presentation_matrix

CONVENTION = "Bl(e_i, e_j) = ((t - 1) (tV - V^T)^-1)_ij mod Z[t, t^-1]"


@dataclass(frozen=True)
class ResidueClass:
    """numerator / denominator, read modulo Z[t, t^-1]."""

    numerator: LaurentPoly
    denominator: LaurentPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("residue with zero denominator")

    @classmethod
    def zero(cls) -> ResidueClass:
        return cls(ZERO, ONE)

    def __add__(self, other: ResidueClass) -> ResidueClass:
        if self.denominator == other.denominator:
            return ResidueClass(self.numerator + other.numerator, self.denominator)
        return ResidueClass(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self):
        return ResidueClass(-self.numerator, self.denominator)

    def __sub__(self, other: ResidueClass) -> ResidueClass:
        return self + (-other)

    def scale(self, p) -> ResidueClass:
        return ResidueClass(as_laurent(p) * self.numerator, self.denominator)

    def conjugate(self) -> ResidueClass:
        return ResidueClass(self.numerator.conjugate(), self.denominator.conjugate())

    def is_zero(self) -> bool:
        """True iff the fraction lies in Z[t, t^-1]."""
        return self.numerator.exact_div(self.denominator) is not None

    def __str__(self):
        return f"{render(self.numerator)} / {render(self.denominator)} (mod Z[t,1/t])"


def residue_equal(x: ResidueClass, y: ResidueClass) -> bool:
    """Equality in Q(t)/Z[t, t^-1], decided by one exact division."""
    return (x - y).is_zero()


class LinkingForm:
    """The pairing (a, b) -> conj(a)^T N b / d for a fixed matrix N and denominator d."""

    def __init__(self, numerators: LaurentMatrix, denominator: LaurentPoly):
        self.numerators = numerators
        self.denominator = denominator
        self.size = numerators.rows

    def pair(self, x: Sequence, y: Sequence) -> ResidueClass:
        if len(x) != self.size or len(y) != self.size:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} for a rank {self.size} form")
        Ny = self.numerators.apply(y)
        acc = ZERO
        for a, b in zip(x, Ny):
            a = as_laurent(a)
            if a and b:
                acc = acc + a.conjugate() * b
        return ResidueClass(acc, self.denominator)


def lambda_form(A: LaurentMatrix) -> LinkingForm:
    """The linking form lambda(A) of a nonsingular hermitian matrix."""
    if not is_hermitian(A):
        raise NotHermitian("lambda(A) needs a hermitian matrix")
    d = determinant(A)
    if d.is_zero():
        raise SingularMatrix("lambda(A) needs det(A) != 0")
    return LinkingForm(adjugate(A), d)


def lambda_pairing(A: LaurentMatrix, x: Sequence, y: Sequence) -> ResidueClass:
    """Residue class of conj(x)^T A^-1 y."""
    return lambda_form(A).pair(x, y)


@dataclass(frozen=True)
class BlanchfieldPresentation:
    M: LaurentMatrix
    delta: LaurentPoly
    table: tuple
    form: LinkingForm | None = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return self.M.rows

    def pair(self, x: Sequence, y: Sequence) -> ResidueClass:
        """Bl(x, y), summed from the table entries."""
        n = self.size
        if len(x) != n or len(y) != n:
            raise DimensionMismatch("vector length does not match the module rank")
        acc = ResidueClass.zero()
        for i in range(n):
            xi = as_laurent(x[i]).conjugate()
            if not xi:
                continue
            for j in range(n):
                yj = as_laurent(y[j])
                if yj:
                    acc = acc + self.table[i][j].scale(xi * yj)
        return acc


def _table_is_hermitian(table) -> bool:
    n = len(table)
    return all(
        residue_equal(table[j][i], table[i][j].conjugate()) for i in range(n) for j in range(i, n)
    )


def _table_is_annihilated(table, delta: LaurentPoly) -> bool:
    return all(e.scale(delta).is_zero() for row in table for e in row)


def blanchfield_table(V: SeifertMatrix) -> BlanchfieldPresentation:
    M = presentation_matrix(V)
    delta = alexander_polynomial(V)
    d = determinant(M)
    N = adjugate(M).scale(T - ONE)
    n = M.rows
    table = tuple(tuple(ResidueClass(N[i, j], d) for j in range(n)) for i in range(n))
    if not _table_is_hermitian(table):
        raise ConventionSelfCheckFailed("Blanchfield table is not hermitian")
    if not _table_is_annihilated(table, delta):
        raise ConventionSelfCheckFailed("Alexander polynomial does not annihilate the table")
    return BlanchfieldPresentation(M, delta, table, LinkingForm(N, d))


@dataclass
class AuditReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _random_laurent(rng: random.Random, span: int = 2, height: int = 2) -> LaurentPoly:
    low = rng.randint(-span, 0)
    return LaurentPoly.from_coeffs(low, [rng.randint(-height, height) for _ in range(span + 1)])


def pairing_audit(B: BlanchfieldPresentation, samples: int = 8, seed: int = 0) -> AuditReport:
    """Re-check hermitian symmetry, annihilation by Delta and sesquilinearity."""
    report = AuditReport()
    n = len(B.table)
    herm = True
    for i in range(n):
        for j in range(i, n):
            if not residue_equal(B.table[j][i], B.table[i][j].conjugate()):
                herm = False
                report.failures.append(f"hermitian: entry ({j},{i}) != conj of ({i},{j})")
    report.checks["hermitian"] = herm

    ann = True
    for i in range(n):
        for j in range(n):
            if not B.table[i][j].scale(B.delta).is_zero():
                ann = False
                report.failures.append(f"annihilation: Delta * entry ({i},{j}) not integral")
    report.checks["annihilation"] = ann

    rng = random.Random(seed)
    sesq = True
    for _ in range(samples if n else 0):
        p = _random_laurent(rng)
        x = [_random_laurent(rng) for _ in range(n)]
        y = [_random_laurent(rng) for _ in range(n)]
        lhs = B.pair([p * a for a in x], y)
        rhs = B.pair(x, y).scale(p.conjugate())
        lhs2 = B.pair(x, [p * b for b in y])
        rhs2 = B.pair(x, y).scale(p)
        if not (residue_equal(lhs, rhs) and residue_equal(lhs2, rhs2)):
            sesq = False
            report.failures.append(f"sesquilinearity fails for p = {p}")
    report.checks["sesquilinear"] = sesq
    return report
