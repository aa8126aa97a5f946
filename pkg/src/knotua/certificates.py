"""Certificates for upper bounds on the algebraic unknotting number.

A certificate for a knot with Seifert matrix V is a triple (A, S, P):

* ``A`` -- an n x n hermitian matrix over Z[t, t^-1],
* ``S`` -- a 2g x n matrix sending the generators of Z^n / A Z^n to the
  Alexander module presented by M = tV - V^T,
* ``P`` -- an integer matrix with P A(1) P^T diagonal (optional; it is
  recomputed when missing or wrong).

When the map induced by S is an isometry lambda(A) -> Bl(K) and A(1) is
diagonalisable over Z, n bounds the algebraic unknotting number from
above, and the signs on the diagonal of P A(1) P^T count the crossing
changes of each sign.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from knotua import intmat
from knotua._kernels import unit_shell
from knotua.blanchfield import BlanchfieldPresentation, ResidueClass, blanchfield_table, lambda_form, residue_equal
from knotua.errors import (
    A1NotDiagonalizable,
    CertificateError,
    DeterminantFail,
    DimensionMismatch,
    HermitianFail,
    NotDiagonalized,
    NotSymmetric,
    NotUnimodular,
    PairingMismatch,
    ParseError,
    SurjectivityProxyFail,
    WitnessNotWellDefined,
)
from knotua.laurent import ONE, LaurentPoly, doteq, normalize_alexander
from knotua.matrix import (
    LaurentMatrix,
    adjugate,
    block_diag,
    congruence,
    determinant,
    hermitian_conjugate,
    inverse_unimodular,
    is_hermitian,
    minors_gcd,
    parse_matrix,
    render_matrix,
)
from knotua.orders import DEFAULT_PRIMES, nakanishi_lower_bound
from knotua.seifert import (
    SeifertMatrix,
    alexander_polynomial,
    presentation_matrix,
    signature_at_minus_one,
    split_connected_sum,
)

log = logging.getLogger(__name__)

DEFAULT_RADIUS = 10
DEFAULT_DEGREE_BOUND = 2
DEFAULT_HEIGHT_BOUND = 2
DEFAULT_MAX_CANDIDATES = 200_000
SPECIALISATION_PRIMES = (2, 3, 5, 7)

YES, NO, UNDECIDED = "yes", "no", "undecided"


# ---------------------------------------------------------------------------
# diagonalisation of unimodular integer forms

@dataclass(frozen=True)
class DiagVerdict:
    decision: str
    witness_P: tuple | None = None
    obstruction: str | None = None


class _Exhausted(Exception):
    pass


def _is_even(Q) -> bool:
    return all(Q[i][i] % 2 == 0 for i in range(len(Q)))


def _gram(B, Q):
    return intmat.matmul(intmat.matmul(B, Q), intmat.transpose(B))


def _is_pm1_diagonal(D) -> bool:
    n = len(D)
    return all(
        (D[i][j] in (1, -1)) if i == j else D[i][j] == 0 for i in range(n) for j in range(n)
    )


def check_diagonalizer(P, Q) -> bool:
    """P is unimodular and P Q P^T is diagonal with entries +-1."""
    n = len(Q)
    if len(P) != n or any(len(r) != n for r in P):
        return False
    if n == 0:
        return True
    return abs(intmat.det(P)) == 1 and _is_pm1_diagonal(_gram(P, Q))


def _definite_split(Q):
    """Rows of P with P Q P^T = +-I for a definite unimodular Q, or None.

    Every norm-one vector of a definite unimodular lattice splits off an
    orthogonal summand, so Q is congruent to +-I exactly when it has n
    pairs of norm-one vectors; they are found by exhaustive short-vector
    enumeration, which needs no search radius.
    """
    n = len(Q)
    pos, _, _ = intmat.inertia(Q)
    sign = 1 if pos else -1
    Qs = [[sign * x for x in r] for r in Q]
    units = sorted(
        (v for v in intmat.short_vectors(Qs, 1) if next(x for x in v if x) > 0),
        key=lambda v: (max(abs(x) for x in v), [-x for x in v]),
    )
    if len(units) < n:
        return None
    return [list(v) for v in units[:n]]


def _complement_basis(Q, v):
    """Z-basis of the orthogonal complement of v, where v^T Q v = +-1."""
    n = len(Q)
    eps = sum(v[i] * Q[i][j] * v[j] for i in range(n) for j in range(n))
    Qv = [sum(Q[i][j] * v[j] for j in range(n)) for i in range(n)]
    proj = []
    for i in range(n):
        w = [-eps * Qv[i] * x for x in v]
        w[i] += 1
        proj.append(w)
    B = intmat.lattice_basis(proj)
    assert len(B) == n - 1
    return B


def _split(Q, radius: int, budget: list):
    n = len(Q)
    if n == 0:
        return []
    if n == 1:
        return [[1]] if Q[0][0] in (1, -1) else None
    if _is_even(Q):
        return None
    pos, neg, _ = intmat.inertia(Q)
    if pos == 0 or neg == 0:
        return _definite_split(Q)
    for r in range(1, radius + 1):
        for v in unit_shell(Q, r):
            budget[0] -= 1
            if budget[0] < 0:
                raise _Exhausted
            B = _complement_basis(Q, v)
            G = _gram(B, Q)
            if _is_even(G):
                continue
            sub = _split(G, radius, budget)
            if sub is not None:
                return [list(v)] + intmat.matmul(sub, B)
    return None


def diagonalizable_over_Z(Q: Sequence[Sequence[int]], radius: int = DEFAULT_RADIUS, budget: int = 100_000) -> DiagVerdict:
    """Decide whether a unimodular symmetric Q is congruent over Z to a diagonal matrix.

    Even forms are never diagonal(+-1). Definite forms are decided exactly
    by counting norm-one vectors. Indefinite odd forms are always
    diagonalisable; the witness is found by splitting off norm-one vectors
    of increasing sup-norm up to ``radius`` and recursing on their
    orthogonal complements. If that search runs out the answer is
    "undecided" rather than a guess.
    """
    Q = [[int(x) for x in r] for r in Q]
    n = len(Q)
    if any(len(r) != n for r in Q) or not intmat.is_symmetric(Q):
        raise NotSymmetric("form must be a symmetric square matrix")
    if n == 0:
        return DiagVerdict(YES, ())
    if abs(intmat.det(Q)) != 1:
        raise NotUnimodular(f"det = {intmat.det(Q)}, expected +-1")
    if _is_even(Q):
        return DiagVerdict(NO, obstruction="even-form")
    pos, neg, _ = intmat.inertia(Q)
    definite = pos == 0 or neg == 0
    try:
        P = _split(Q, radius, [budget])
    except _Exhausted:
        P = None
    if P is None:
        if definite:
            return DiagVerdict(NO, obstruction="definite-no-unit-splitting")
        return DiagVerdict(UNDECIDED)
    if not check_diagonalizer(P, Q):
        raise AssertionError("diagonaliser failed re-verification")
    return DiagVerdict(YES, tuple(tuple(r) for r in P))


def signed_counts(verdict: DiagVerdict, Q) -> tuple[int, int]:
    """Numbers of +1 and -1 entries on the diagonal of P Q P^T."""
    if verdict.decision != YES or verdict.witness_P is None:
        raise NotDiagonalized("verdict carries no diagonalising witness")
    P = [list(r) for r in verdict.witness_P]
    if not check_diagonalizer(P, Q):
        raise NotDiagonalized("P Q P^T is not diagonal with +-1 entries")
    D = _gram(P, Q) if Q else []
    n_plus = sum(1 for i in range(len(D)) if D[i][i] == 1)
    return n_plus, len(D) - n_plus


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Certificate:
    A: LaurentMatrix
    witness_S: LaurentMatrix
    diagonalizer_P: tuple | None = None
    source: str = "none"

    @property
    def size(self) -> int:
        return self.A.rows


@dataclass(frozen=True)
class CheckedBound:
    n: int
    n_plus: int
    n_minus: int
    certificate: Certificate
    diagonalizer_P: tuple
    target_alexander: LaurentPoly


def _shape_S(cert: Certificate, rows: int) -> LaurentMatrix:
    S = cert.witness_S
    if S.rows == 0 and S.cols == 0 and rows:
        return LaurentMatrix.zeros(rows, cert.A.rows)
    return S


def predicted_target_alexander(A: LaurentMatrix, delta: LaurentPoly) -> LaurentPoly | None:
    """det(A^-1) * Delta^2 / Delta as a Laurent polynomial, or None if not integral.

    When det(A) is associate to Delta this is a unit, i.e. the knot left
    after the crossing changes has Alexander polynomial one.
    """
    d = determinant(A)
    if d.is_zero():
        return None
    return (delta * delta).exact_div(d * delta)


def _specialisations_agree(A: LaurentMatrix, M: LaurentMatrix, S: LaurentMatrix, primes=SPECIALISATION_PRIMES) -> str | None:
    n, m = A.rows, M.rows
    for p in primes:
        for a in range(1, p):
            Ap, Mp, Sp = A.mod_p_at(a, p), M.mod_p_at(a, p), S.mod_p_at(a, p)
            rM = intmat.rank_mod_p(Mp, p) if m else 0
            aug = [r + s for r, s in zip(Mp, Sp)]
            if m and intmat.rank_mod_p(aug, p) != m:
                return f"map not onto after t -> {a} mod {p}"
            rA = intmat.rank_mod_p(Ap, p) if n else 0
            if n - rA != m - rM:
                return f"module dimensions differ after t -> {a} mod {p}"
    return None


def surjectivity_problem(A: LaurentMatrix, M: LaurentMatrix, S: LaurentMatrix) -> str | None:
    """Why the map Z^n / A Z^n -> Z^m / M Z^m given by S may fail to be onto, or None.

    The maximal minors of [M | S] must be coprime, and every specialisation
    t -> a in F_p must give a surjection between spaces of equal dimension.
    """
    m = M.rows
    if m and not doteq(minors_gcd(M.hstack(S), m), ONE):
        return "maximal minors of [M | S] are not coprime"
    return _specialisations_agree(A, M, S)


def verify_certificate(V: SeifertMatrix, cert: Certificate, radius: int = DEFAULT_RADIUS,
                       blanchfield: BlanchfieldPresentation | None = None) -> CheckedBound:
    """Run every certificate check; raise the first failing check's error."""
    A = cert.A
    M = presentation_matrix(V)
    m = M.rows
    S = _shape_S(cert, m)
    if not A.is_square() or S.rows != m or S.cols != A.rows:
        raise DimensionMismatch(f"A is {A.shape}, S is {S.shape}, module rank {m}")
    n = A.rows

    if not is_hermitian(A):
        raise HermitianFail("A is not hermitian")

    delta = alexander_polynomial(V)
    if not doteq(determinant(A), delta):
        raise DeterminantFail(f"det(A) = {determinant(A)} is not associate to Delta = {delta}")
    target = predicted_target_alexander(A, delta)
    if target is None or not target.is_unit() or normalize_alexander(target) != ONE:
        raise DeterminantFail("predicted target Alexander polynomial is not 1")

    # S A = M W with W integral, i.e. S maps relations to relations
    if n:
        SA = S @ A
        W = (adjugate(M) @ SA) if m else SA
        dM = determinant(M)
        if any(x.exact_div(dM) is None for r in W.tolist() for x in r):
            raise WitnessNotWellDefined("M^-1 S A is not integral")

    B = blanchfield if blanchfield is not None else blanchfield_table(V)
    if n:
        lam = lambda_form(A)
        cols = [S.col(j) for j in range(n)]
        basis = [[ONE if k == i else 0 for k in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                lhs = lam.pair(basis[i], basis[j])
                rhs = B.form.pair(cols[i], cols[j]) if B.form is not None else B.pair(cols[i], cols[j])
                if not residue_equal(lhs, rhs):
                    raise PairingMismatch(f"lambda(A)(e{i}, e{j}) != Bl(S e{i}, S e{j})")

    problem = surjectivity_problem(A, M, S)
    if problem:
        raise SurjectivityProxyFail(problem)

    Q = A.at_one()
    P = [list(r) for r in cert.diagonalizer_P] if cert.diagonalizer_P is not None else None
    if P is None or not check_diagonalizer(P, Q):
        verdict = diagonalizable_over_Z(Q, radius)
        if verdict.decision != YES:
            raise A1NotDiagonalizable(f"A(1) diagonalisation: {verdict.decision} ({verdict.obstruction})")
        P = [list(r) for r in verdict.witness_P]
    n_plus, n_minus = signed_counts(DiagVerdict(YES, tuple(tuple(r) for r in P)), Q)
    return CheckedBound(n, n_plus, n_minus, cert, tuple(tuple(r) for r in P), normalize_alexander(target))


def congruent_certificate(cert: Certificate, U: LaurentMatrix) -> Certificate:
    """The same isometry re-expressed for A' = conj(U)^T A U.

    The generator e_i of Z^n / A' Z^n corresponds to (conj(U)^T)^-1 e_i
    in Z^n / A Z^n, so the witness becomes S (conj(U)^T)^-1 and a
    diagonaliser P of A(1) becomes P U(1)^-T.
    """
    A2 = congruence(cert.A, U)
    Uh_inv = inverse_unimodular(hermitian_conjugate(U))
    S2 = cert.witness_S @ Uh_inv
    P2 = None
    if cert.diagonalizer_P is not None:
        U1_inv_T = intmat.transpose(intmat.integral_inverse(U.at_one()))
        P2 = tuple(tuple(r) for r in intmat.matmul([list(r) for r in cert.diagonalizer_P], U1_inv_T))
    return Certificate(A2, S2, P2, source=cert.source)


def degenerate_certificate(V: SeifertMatrix) -> Certificate:
    """The size-zero certificate, valid exactly when Delta = 1."""
    return Certificate(LaurentMatrix([], 0, 0), LaurentMatrix.zeros(V.size, 0), (), source="degenerate")


def _candidate_vectors(size: int, degree_bound: int, height: int):
    """Candidate generators of a given height, in the search's total order.

    Entries have exponents in [0, degree_bound]; vectors differing by a
    global unit +-t^k give the same certificate, so only those with a
    nonzero coefficient at t^0 somewhere and a positive first coefficient
    are kept.
    """
    width = degree_bound + 1
    out = []
    for flat in product(range(-height, height + 1), repeat=size * width):
        if max(abs(c) for c in flat) != height:
            continue
        first = next(c for c in flat if c)
        if first < 0:
            continue
        if not any(flat[i * width] for i in range(size)):
            continue
        out.append(flat)
    out.sort(key=lambda f: (sum(1 for c in f if c), [-c for c in f]))
    for flat in out:
        yield [LaurentPoly.from_coeffs(0, flat[i * width:(i + 1) * width]) for i in range(size)]


def search_rank_one_certificate(V: SeifertMatrix, degree_bound: int = DEFAULT_DEGREE_BOUND,
                                height_bound: int = DEFAULT_HEIGHT_BOUND, radius: int = DEFAULT_RADIUS,
                                max_candidates: int = DEFAULT_MAX_CANDIDATES,
                                primes: Sequence[int] = DEFAULT_PRIMES) -> Certificate | None:
    """First certificate with A = [+-Delta] and S = x over a fixed candidate order.

    Knots whose Nakanishi or signature bound already exceeds one are
    rejected without enumeration. Alexander-polynomial-one knots get the
    size-zero certificate.
    """
    delta = alexander_polynomial(V)
    if delta == ONE:
        return degenerate_certificate(V)
    M = presentation_matrix(V)
    if nakanishi_lower_bound(M, primes) > 1 or abs(signature_at_minus_one(V)) // 2 > 1:
        return None
    B = blanchfield_table(V)
    forms = {1: ResidueClass(ONE, delta), -1: ResidueClass(-ONE, delta)}
    seen = 0
    for h in range(1, height_bound + 1):
        for x in _candidate_vectors(V.size, degree_bound, h):
            seen += 1
            if seen > max_candidates:
                log.info("rank-one search stopped after %d candidates", max_candidates)
                return None
            value = B.form.pair(x, x)
            for sign in (1, -1):
                if not residue_equal(value, forms[sign]):
                    continue
                cert = Certificate(
                    LaurentMatrix([[delta * sign]], 1, 1), LaurentMatrix.column(x), ((1,),), source="search"
                )
                try:
                    verify_certificate(V, cert, radius, blanchfield=B)
                except CertificateError:
                    continue
                return cert
    return None


def assemble_block_certificate(certs: Sequence[Certificate]) -> Certificate:
    """Direct sum of certificates for the summands of a connected sum."""
    A = block_diag(*[c.A for c in certs])
    S = block_diag(*[c.witness_S for c in certs])
    n = A.rows
    P = [[0] * n for _ in range(n)]
    off = 0
    for c in certs:
        k = c.A.rows
        Pc = c.diagonalizer_P
        if Pc is None:
            Pc = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        for i in range(k):
            for j in range(k):
                P[off + i][off + j] = Pc[i][j]
        off += k
    return Certificate(A, S, tuple(tuple(r) for r in P), source="block-sum")


def search_certificate(V: SeifertMatrix, degree_bound: int = DEFAULT_DEGREE_BOUND,
                       height_bound: int = DEFAULT_HEIGHT_BOUND, radius: int = DEFAULT_RADIUS,
                       max_candidates: int = DEFAULT_MAX_CANDIDATES,
                       primes: Sequence[int] = DEFAULT_PRIMES) -> Certificate | None:
    """Rank-one search, assembled blockwise when V is a visible connected sum."""
    blocks = split_connected_sum(V)
    if len(blocks) == 1:
        return search_rank_one_certificate(V, degree_bound, height_bound, radius, max_candidates, primes)
    parts = []
    for b in blocks:
        c = search_rank_one_certificate(b, degree_bound, height_bound, radius, max_candidates, primes)
        if c is None:
            return None
        parts.append(c)
    return assemble_block_certificate(parts)


# ---------------------------------------------------------------------------
# bounds

@dataclass
class BoundsOptions:
    primes: tuple = DEFAULT_PRIMES
    degree_bound: int = DEFAULT_DEGREE_BOUND
    height_bound: int = DEFAULT_HEIGHT_BOUND
    radius: int = DEFAULT_RADIUS
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    search: bool = True


@dataclass
class BoundsReport:
    name: str
    delta: LaurentPoly
    sigma_minus1: int
    nakanishi_lb: int
    lower: int
    lower_sources: list
    upper: int
    upper_certified: bool
    generic_upper: int
    signed: tuple | None = None
    certificate: Certificate | None = None
    certificate_failures: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "exact" if self.upper_certified and self.lower == self.upper else "interval"


def bounds_report(V: SeifertMatrix, certs: Sequence[Certificate] = (), options: BoundsOptions | None = None,
                  name: str = "") -> BoundsReport:
    """Combine the classical lower bounds with verified certificate upper bounds."""
    options = options or BoundsOptions()
    delta = alexander_polynomial(V)
    sigma = signature_at_minus_one(V)
    nak = nakanishi_lower_bound(presentation_matrix(V), options.primes) if V.size else 0
    candidates = {"nakanishi": nak, "signature": abs(sigma) // 2, "delta": int(delta != ONE)}
    lower = max(candidates.values())
    sources = [k for k, v in candidates.items() if v == lower and v > 0]

    certs = list(certs)
    if options.search and not any(c.source == "search" for c in certs):
        found = search_certificate(V, options.degree_bound, options.height_bound, options.radius,
                                   options.max_candidates, options.primes)
        if found is not None:
            certs.append(found)

    B = blanchfield_table(V)
    best: CheckedBound | None = None
    failures = []
    for c in certs:
        try:
            checked = verify_certificate(V, c, options.radius, blanchfield=B)
        except CertificateError as exc:
            failures.append(f"{c.source}: {type(exc).__name__}: {exc}")
            continue
        if best is None or checked.n < best.n:
            best = checked

    generic = delta.span() + 1
    if best is not None and best.n <= generic:
        upper, certified = best.n, True
    else:
        upper, certified = generic, False
    if lower > upper:
        raise AssertionError(f"lower bound {lower} exceeds upper bound {upper}")
    return BoundsReport(
        name=name,
        delta=delta,
        sigma_minus1=sigma,
        nakanishi_lb=nak,
        lower=lower,
        lower_sources=sources,
        upper=upper,
        upper_certified=certified,
        generic_upper=generic,
        signed=(best.n_plus, best.n_minus) if certified else None,
        certificate=best.certificate if certified else None,
        certificate_failures=failures,
    )


# ---------------------------------------------------------------------------
# certificate files

def render_certificate(cert: Certificate) -> str:
    lines = [f"A: {render_matrix(cert.A)}", f"S: {render_matrix(cert.witness_S)}"]
    if cert.diagonalizer_P is not None:
        lines.append("P: " + "; ".join(", ".join(str(x) for x in r) for r in cert.diagonalizer_P))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_certificate(text: str, source: str = "file") -> Certificate:
    """Parse sections ``A:``, ``S:`` and optional ``P:``; continuation lines add rows."""
    sections: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line[:2].upper()
        if head in ("A:", "S:", "P:"):
            current = head[0]
            if current in sections:
                raise ParseError(f"duplicate section {current}:", lineno)
            sections[current] = []
            line = line[2:].strip()
            if not line:
                continue
        elif current is None:
            raise ParseError("content before the first section", lineno)
        sections[current].append(line)
    if "A" not in sections or "S" not in sections:
        raise ParseError("certificate needs A: and S: sections")
    A = parse_matrix("; ".join(sections["A"]))
    S = parse_matrix("; ".join(sections["S"]))
    P = None
    if "P" in sections:
        Pm = parse_matrix("; ".join(sections["P"]))
        P = []
        for r in Pm.tolist():
            if not all(e.is_constant() for e in r):
                raise ParseError("P must be an integer matrix")
            P.append(tuple(e.coeffs[0] if e else 0 for e in r))
        P = tuple(P)
    return Certificate(A, S, P, source=source)


def load_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read(), source=str(path))
