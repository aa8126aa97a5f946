"""Orders of finitely presented Z[t, t^-1]-modules and mod-p lower bounds.

A presentation matrix has one row per generator and one column per
relation. Over F_p[t, t^-1], a PID, the module splits into cyclic
pieces read off a Smith normal form; counting the non-unit pieces gives
a lower bound for the minimal number of generators of the module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from knotua import intmat
from knotua._kernels import fp_divmod, fp_mul, fp_sub
from knotua.errors import DimensionMismatch, NotPrime
from knotua.laurent import ONE, ZERO, LaurentPoly, as_laurent
from knotua.matrix import (
    LaurentMatrix,
    adjugate,
    determinant,
    minors_gcd,
)

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class Presentation:
    matrix: LaurentMatrix

    @property
    def generators(self) -> int:
        return self.matrix.rows

    @property
    def relations(self) -> int:
        return self.matrix.cols


def _as_presentation(P) -> Presentation:
    return P if isinstance(P, Presentation) else Presentation(P)


def order_of_presentation(P) -> LaurentPoly:
    """Canonical gcd of the maximal (n x n) minors; 0 if there are fewer relations than generators."""
    M = _as_presentation(P).matrix
    n = M.rows
    if n == 0:
        return ONE
    if M.cols < n:
        return ZERO
    return minors_gcd(M, n)


def annihilation_check(P, v: Sequence) -> bool:
    """Whether order(H) * v lies in the column span of the presentation.

    For square presentations this always holds (adjugate identity). For
    wider ones a solution is sought column block by column block over the
    fraction field; a True answer comes with an integral solution, a
    False answer is either refuted by a specialisation t = a over F_p or
    means no block solve was integral.
    """
    M = _as_presentation(P).matrix
    n = M.rows
    if len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} for {n} generators")
    v = [as_laurent(x) for x in v]
    order = order_of_presentation(M)
    target = [order * x for x in v]
    if all(x.is_zero() for x in target):
        return True
    if M.cols < n or _specialisation_refutes(M, target):
        return False
    for cols in combinations(range(M.cols), n):
        B = M.submatrix(range(n), cols)
        d = determinant(B)
        if d.is_zero():
            continue
        # B * (adj(B) target / d) = target
        num = adjugate(B).apply(target)
        sol = [x.exact_div(d) for x in num]
        if all(s is not None for s in sol):
            full = [ZERO] * M.cols
            for c, s in zip(cols, sol):
                full[c] = s
            assert M.apply(full) == target
            return True
    return False


def _specialisation_refutes(M: LaurentMatrix, target, primes=DEFAULT_PRIMES) -> bool:
    for p in primes:
        for a in range(1, p):
            Mp = M.mod_p_at(a, p)
            col = LaurentMatrix.column(target).mod_p_at(a, p)
            aug = [r + c for r, c in zip(Mp, col)]
            if intmat.rank_mod_p(aug, p) > intmat.rank_mod_p(Mp, p):
                return True
    return False


# ---------------------------------------------------------------------------
# Smith normal form over F_p[t, t^-1]

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors of a presentation reduced mod p.

    ``invariant_factors`` lists the non-unit nonzero factors as monic
    coefficient lists over F_p (lowest degree first, no factor of t);
    ``rank_deficiency`` counts the zero factors, i.e. free summands.
    """

    prime: int
    invariant_factors: tuple = field(default_factory=tuple)
    rank_deficiency: int = 0

    @property
    def nontrivial_count(self) -> int:
        return len(self.invariant_factors) + self.rank_deficiency


def _reduce_row_mod_p(row: Sequence[LaurentPoly], p: int) -> list[list[int]]:
    # multiply the whole row by a power of t so every entry lies in Z[t]
    lows = [e.low for e in row if e]
    s = -min(lows) if lows else 0
    out = []
    for e in row:
        if e.is_zero():
            out.append([])
            continue
        c = [0] * (e.low + s) + [x % p for x in e.coeffs]
        while c and c[-1] == 0:
            c.pop()
        out.append(c)
    return out


def _deg(a) -> int:
    return len(a) - 1


def _monic_unit_free(a: list, p: int) -> list:
    inv = pow(a[-1], -1, p)
    a = [x * inv % p for x in a]
    k = 0
    while a[k] == 0:
        k += 1
    return a[k:]


def smith_diagonal_fp(rows: list[list[list[int]]], p: int) -> list[list[int]]:
    """Diagonal of a Smith normal form over F_p[t] (entries may be [])."""
    a = [[list(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if a[i][j] and (best is None or _deg(a[i][j]) < _deg(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return diag + [[] for _ in range(k, min(m, n))]
            i, j = best
            a[k], a[i] = a[i], a[k]
            for r in a:
                r[k], r[j] = r[j], r[k]
            piv = a[k][k]
            clean = True
            for i in range(k + 1, m):
                if a[i][k]:
                    q, rem = fp_divmod(a[i][k], piv, p)
                    for j in range(k, n):
                        a[i][j] = fp_sub(a[i][j], fp_mul(q, a[k][j], p), p)
                    if rem:
                        clean = False
            for j in range(k + 1, n):
                if a[k][j]:
                    q, rem = fp_divmod(a[k][j], piv, p)
                    for i in range(k, m):
                        a[i][j] = fp_sub(a[i][j], fp_mul(q, a[i][k], p), p)
                    if rem:
                        clean = False
            if not clean:
                continue
            # pivot must divide the rest of the block
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if a[i][j] and fp_divmod(a[i][j], piv, p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                diag.append(piv)
                break
            a[k] = [fp_sub(x, fp_sub([], y, p), p) for x, y in zip(a[k], a[bad])]
    return diag


def snf_over_fp(P, p: int) -> SnfResult:
    """Smith normal form of the presentation over F_p[t, t^-1]."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    M = _as_presentation(P).matrix
    if M.rows == 0:
        return SnfResult(p, (), 0)
    rows = [_reduce_row_mod_p(M.row(i), p) for i in range(M.rows)]
    diag = smith_diagonal_fp(rows, p) if M.cols else []
    factors = []
    zeros = M.rows - len(diag)
    for d in diag:
        if not d:
            zeros += 1
            continue
        f = _monic_unit_free(d, p)
        if len(f) > 1:
            factors.append(tuple(f))
    factors.sort(key=len)
    return SnfResult(p, tuple(factors), zeros)


def nakanishi_lower_bound(P, primes: Sequence[int] = DEFAULT_PRIMES) -> int:
    """Max over p of the number of non-unit invariant factors mod p.

    This bounds the minimal number of generators of the module from
    below, and hence the Nakanishi index.
    """
    if not primes:
        raise ValueError("need at least one prime")
    return max(snf_over_fp(P, p).nontrivial_count for p in primes)


def fp_poly_to_laurent(c: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.from_coeffs(0, c)


def order_mod_p_matches(P, p: int) -> bool:
    """Product of mod-p invariant factors is associate to the order mod p."""
    order = order_of_presentation(P)
    red = [x % p for x in order.coeffs]
    if not any(red):
        return True
    snf = snf_over_fp(P, p)
    prod = [1]
    for f in snf.invariant_factors:
        prod = fp_mul(prod, list(f), p)
    red_l = LaurentPoly.from_coeffs(0, red)
    mono = _monic_unit_free(list(red_l.coeffs), p)
    return prod == mono and snf.rank_deficiency == 0


__all__ = [
    "DEFAULT_PRIMES",
    "Presentation",
    "SnfResult",
    "annihilation_check",
    "is_prime",
    "nakanishi_lower_bound",
    "order_mod_p_matches",
    "order_of_presentation",
    "snf_over_fp",
]
