"""Small exact helpers for integer and rational matrices (lists of lists)."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    if not A:
        return []
    Bt = transpose(B)
    if not Bt:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def is_symmetric(Q) -> bool:
    n = len(Q)
    return all(len(row) == n for row in Q) and all(
        Q[i][j] == Q[j][i] for i in range(n) for j in range(i + 1, n)
    )


def det(M) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank_mod_p(M, p: int) -> int:
    rows = [[x % p for x in row] for row in M]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def congruence_diagonal(Q) -> list[Fraction]:
    """Diagonal of a rational matrix congruent to the symmetric matrix Q.

    Symmetric elimination; a zero pivot with a nonzero entry further along
    its row is repaired by adding that row/column, which leaves a nonzero
    diagonal entry.
    """
    a = [[Fraction(x) for x in row] for row in Q]
    n = len(a)
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                for c in range(n):
                    a[k][c] += a[j][c]
                for r in range(n):
                    a[r][k] += a[r][j]
        piv = a[k][k]
        diag.append(piv)
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                for j in range(k, n):
                    a[j][i] = a[i][j]
    return diag


def signature(Q) -> int:
    """Signature (positive minus negative inertia) of a symmetric rational matrix."""
    d = congruence_diagonal(Q)
    return sum(1 for x in d if x > 0) - sum(1 for x in d if x < 0)


def inertia(Q) -> tuple[int, int, int]:
    d = congruence_diagonal(Q)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0))


def inverse(M) -> list[list[Fraction]]:
    """Exact inverse over Q by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def integral_inverse(M) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, as integers."""
    inv = inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def lattice_basis(vectors) -> list[list[int]]:
    """A Z-basis (as rows) of the lattice spanned by integer vectors.

    Row-style Hermite reduction with extended-gcd row operations.
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    for c in range(ncols):
        live = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[c] // piv[c]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        if live:
            basis.append(live[0])
        rows = rest
    return basis


def short_vectors(Q, bound: int):
    """All integer v != 0 with v^T Q v <= bound, Q positive definite.

    Fincke-Pohst enumeration on an exact rational LDL^T factorisation;
    v and -v are both returned.
    """
    n = len(Q)
    if n == 0:
        return []
    # Q = sum_i d_i (x_i + sum_{j>i} mu[i][j] x_j)^2
    a = [[Fraction(x) for x in row] for row in Q]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= mu[i][j] * mu[i][k] * d[i]
    out = []
    x = [0] * n

    def rec(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = sum(mu[i][j] * x[j] for j in range(i + 1, n))
        # d_i (x_i + c)^2 <= remaining
        r2 = remaining / d[i]
        lo = _ceil(-c - _sqrt_upper(r2))
        hi = _floor(-c + _sqrt_upper(r2))
        for xi in range(lo, hi + 1):
            used = d[i] * (xi + c) ** 2
            if used <= remaining:
                x[i] = xi
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def _sqrt_upper(q: Fraction) -> Fraction:
    # rational upper bound on sqrt(q)
    if q <= 0:
        return Fraction(0)
    s = isqrt(q.numerator * q.denominator)
    return Fraction(s + 1, q.denominator)


def _floor(q) -> int:
    return q.numerator // q.denominator if isinstance(q, Fraction) else int(q // 1)


def _ceil(q) -> int:
    return -_floor(-q)
