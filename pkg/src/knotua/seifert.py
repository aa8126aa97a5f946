"""Seifert matrices and the classical invariants computed from them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from knotua import intmat
from knotua.errors import NotSeifert, OmegaAtAlexanderRoot
from knotua.laurent import T, LaurentPoly, normalize_alexander
from knotua.matrix import LaurentMatrix, determinant

# eigenvalues closer to zero than this (times the spectral norm) are not trusted
LT_CERTIFICATION_GAP = 1e-9


@dataclass(frozen=True)
class SeifertMatrix:
    """A validated Seifert matrix V (2g x 2g integers, det(V - V^T) = 1)."""

    V: tuple

    @property
    def size(self) -> int:
        return len(self.V)

    @property
    def genus(self) -> int:
        return len(self.V) // 2

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.V]

    def flat(self) -> list[int]:
        return [x for r in self.V for x in r]


def validate_seifert(V: Sequence[Sequence[int]]) -> SeifertMatrix:
    if isinstance(V, SeifertMatrix):
        return V
    rows = [[int(x) for x in r] for r in V]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSeifert("Seifert matrix must be square")
    if n % 2:
        raise NotSeifert(f"Seifert matrix has odd size {n}")
    skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
    d = intmat.det(skew)
    if d != 1:
        raise NotSeifert(f"det(V - V^T) = {d}, expected 1")
    return SeifertMatrix(tuple(tuple(r) for r in rows))


def presentation_matrix(V: SeifertMatrix) -> LaurentMatrix:
    """tV - V^T, a square presentation of the Alexander module."""
    n = V.size
    return LaurentMatrix(
        [[T * V.V[i][j] - LaurentPoly(V.V[j][i]) for j in range(n)] for i in range(n)], n, n
    )


def alexander_polynomial(V: SeifertMatrix) -> LaurentPoly:
    """Symmetric Alexander polynomial with value 1 at t = 1."""
    return normalize_alexander(determinant(presentation_matrix(V)))


def symmetrized(V: SeifertMatrix) -> list[list[int]]:
    n = V.size
    return [[V.V[i][j] + V.V[j][i] for j in range(n)] for i in range(n)]


def signature_at_minus_one(V: SeifertMatrix) -> int:
    """Signature of V + V^T by exact rational congruence diagonalisation."""
    return intmat.signature(symmetrized(V))


@dataclass(frozen=True)
class SignatureSample:
    theta: Fraction
    value: int

    @property
    def omega(self) -> complex:
        return omega_from_theta(self.theta)


def omega_from_theta(theta: Fraction) -> complex:
    theta = Fraction(theta)
    if theta == Fraction(1, 2):
        return complex(-1.0, 0.0)
    if theta == Fraction(1, 4):
        return complex(0.0, 1.0)
    if theta == Fraction(3, 4):
        return complex(0.0, -1.0)
    return complex(np.exp(2j * np.pi * float(theta)))


def levine_tristram_signature(V: SeifertMatrix, theta) -> SignatureSample:
    """Signature of (1 - w)V + (1 - conj w)V^T at w = exp(2 pi i theta).

    Raises OmegaAtAlexanderRoot when some eigenvalue is within the
    certification gap of zero, which happens near roots of the Alexander
    polynomial; the caller should move theta.
    """
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError("theta must lie strictly between 0 and 1")
    if V.size == 0:
        return SignatureSample(theta, 0)
    w = omega_from_theta(theta)
    A = np.array(V.V, dtype=float)
    H = (1 - w) * A + (1 - np.conj(w)) * A.T
    H = (H + H.conj().T) / 2
    eig = np.linalg.eigvalsh(H)
    gap = LT_CERTIFICATION_GAP * max(np.linalg.norm(H, 2), 1.0)
    if np.min(np.abs(eig)) <= gap:
        raise OmegaAtAlexanderRoot(
            f"theta = {theta}: eigenvalue within {gap:.3g} of zero; perturb theta"
        )
    return SignatureSample(theta, int(np.sum(eig > 0) - np.sum(eig < 0)))


def connected_sum(V1: SeifertMatrix, V2: SeifertMatrix) -> SeifertMatrix:
    """Block-diagonal Seifert matrix of the connected sum."""
    n1, n2 = V1.size, V2.size
    rows = [list(r) + [0] * n2 for r in V1.V] + [[0] * n1 + list(r) for r in V2.V]
    return validate_seifert(rows)


def mirror(V: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix -V^T of the mirror image."""
    n = V.size
    return validate_seifert([[-V.V[j][i] for j in range(n)] for i in range(n)])


def split_connected_sum(V: SeifertMatrix) -> list[SeifertMatrix]:
    """Finest splitting of V into diagonal blocks that are Seifert matrices.

    Only consecutive blocks are detected; a matrix that does not split
    comes back as a one-element list.
    """
    n = V.size
    blocks, start = [], 0
    for end in range(2, n + 1, 2):
        decoupled = all(
            V.V[i][j] == 0 and V.V[j][i] == 0 for i in range(start, end) for j in range(end, n)
        )
        if not decoupled:
            continue
        sub = [list(V.V[i][start:end]) for i in range(start, end)]
        try:
            blocks.append(validate_seifert(sub))
        except NotSeifert:
            continue
        start = end
    if start != n or not blocks:
        return [V]
    return blocks
