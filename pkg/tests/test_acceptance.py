"""Acceptance criteria. Each test prints one PASS/FAIL line."""
import random
import subprocess
import sys
import time

import pytest

from conftest import random_matrix, random_unimodular, random_laurent
from knotua import intmat
from knotua.blanchfield import blanchfield_table, lambda_pairing, residue_equal
from knotua.certificates import (
    NO,
    YES,
    BoundsOptions,
    bounds_report,
    check_diagonalizer,
    congruent_certificate,
    diagonalizable_over_Z,
    predicted_target_alexander,
    search_certificate,
    verify_certificate,
)
from knotua.laurent import ONE, T, ZERO, doteq, laurent_gcd, normalize_alexander, parse
from knotua.matrix import LaurentMatrix, determinant, hermitian_conjugate, inverse_unimodular, minors_gcd
from knotua.orders import order_of_presentation
from knotua.report import bundled_certificates, bundled_table, dumps, run_report
from knotua.seifert import alexander_polynomial, signature_at_minus_one


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail

    return emit


def _table():
    return {r.name: r for r in bundled_table()}


def test_criterion_1_exact_invariants(report):
    start = time.perf_counter()
    table = _table()
    got = (
        alexander_polynomial(table["3_1"].seifert),
        alexander_polynomial(table["4_1"].seifert),
        signature_at_minus_one(table["3_1"].seifert),
        signature_at_minus_one(table["4_1"].seifert),
    )
    elapsed = time.perf_counter() - start
    want = (parse("t - 1 + t^-1"), parse("-t + 3 - t^-1"), -2, 0)
    report(1, got == want and elapsed < 1.0,
           f"Delta(3_1), Delta(4_1), sigma(3_1), sigma(4_1) exact in {elapsed:.3f}s (< 1s)")


def test_criterion_2_certificate_pipeline(report):
    start = time.perf_counter()
    table = _table()
    certs = bundled_certificates()
    r31 = bounds_report(table["3_1"].seifert, name="3_1")
    r41 = bounds_report(table["4_1"].seifert, name="4_1")
    # granny: only the supplied diag(Delta, Delta) certificate, no search
    rg = bounds_report(table["granny"].seifert, certs["granny"], BoundsOptions(search=False), name="granny")
    elapsed = time.perf_counter() - start
    delta = parse("t - 1 + t^-1")
    ok = (
        (r31.lower, r31.upper, r31.status, r31.signed) == (1, 1, "exact", (1, 0))
        and (r41.lower, r41.upper, r41.status, r41.signed) == (1, 1, "exact", (0, 1))
        and (rg.nakanishi_lb, rg.lower, rg.upper, rg.status) == (2, 2, 2, "exact")
        and rg.certificate.A == LaurentMatrix.diag([delta, delta])
        and elapsed < 5.0
    )
    report(2, ok, f"u_a(3_1)=1 (1,0), u_a(4_1)=1 (0,1), u_a(granny)=2 via Nakanishi 2 + diag certificate "
                  f"in {elapsed:.3f}s (< 5s)")


def test_criterion_3_blanchfield_suite(report):
    checked = failed = 0
    for rec in bundled_table():
        B = blanchfield_table(rec.seifert)
        n = B.size
        for i in range(n):
            for j in range(n):
                checked += 2
                failed += not residue_equal(B.table[j][i], B.table[i][j].conjugate())
                failed += not B.table[i][j].scale(B.delta).is_zero()
        checked += 1
        failed += not doteq(laurent_gcd(B.delta, T - ONE), ONE)
    report(3, failed == 0 and checked > 0,
           f"{checked - failed}/{checked} hermitian, annihilation and gcd(Delta, t-1) checks over the table")


def test_criterion_4_order_algebra(report):
    rng = random.Random(20261018)
    cases = 1000
    mult_fail = det_fail = 0
    for _ in range(cases):
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        A = random_matrix(rng, n, n, span=2, height=3)
        C = random_matrix(rng, m, m, span=2, height=3)
        B = random_matrix(rng, n, m, span=2, height=3)
        rows = [list(A.row(i)) + list(B.row(i)) for i in range(n)]
        rows += [[ZERO] * n + list(C.row(i)) for i in range(m)]
        M = LaurentMatrix(rows, n + m, n + m)
        big = order_of_presentation(M)
        if not doteq(big, order_of_presentation(A) * order_of_presentation(C)):
            mult_fail += 1
        for X in (M, A, C):
            if not doteq(minors_gcd(X, X.rows), determinant(X)):
                det_fail += 1
    report(4, mult_fail == 0 and det_fail == 0,
           f"{cases} random block-triangular presentations: {mult_fail} multiplicativity and "
           f"{det_fail} order-vs-det failures")


def test_criterion_5_congruence_invariance(report):
    rng = random.Random(5)
    table = _table()
    certs = bundled_certificates()
    base = {}
    for name in ("3_1", "4_1", "5_2", "granny", "square", "5_1"):
        V = table[name].seifert
        cert = certs[name][0] if name in certs else search_certificate(V)
        base[name] = (V, cert, verify_certificate(V, cert))
    transforms = 240
    verify_fail = pair_fail = 0
    for k in range(transforms):
        name = list(base)[k % len(base)]
        V, cert, ref = base[name]
        n = cert.size
        U = random_unimodular(rng, n, steps=3)
        moved = congruent_certificate(cert, U)
        try:
            out = verify_certificate(V, moved)
            if (out.n, out.n_plus, out.n_minus) != (ref.n, ref.n_plus, ref.n_minus):
                verify_fail += 1
        except Exception:
            verify_fail += 1
        # lambda(U* A U)(U* a, U* b) = lambda(A)(a, b)
        Uh = hermitian_conjugate(U)
        a = [random_laurent(rng, 1, 2) for _ in range(n)]
        b = [random_laurent(rng, 1, 2) for _ in range(n)]
        if not residue_equal(lambda_pairing(moved.A, Uh.apply(a), Uh.apply(b)), lambda_pairing(cert.A, a, b)):
            pair_fail += 1
        Uh_inv = inverse_unimodular(Uh)
        if not residue_equal(lambda_pairing(moved.A, a, b), lambda_pairing(cert.A, Uh_inv.apply(a), Uh_inv.apply(b))):
            pair_fail += 1
    report(5, verify_fail == 0 and pair_fail == 0,
           f"{transforms} random unit-determinant transforms: {verify_fail} verification and "
           f"{pair_fail} pairing failures")


E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]


def test_criterion_6_diagonalizability(report):
    E8_1 = [r + [0] for r in E8] + [[0] * 8 + [1]]
    results = []
    v = diagonalizable_over_Z([[0, 1], [1, 1]])
    results.append(v.decision == YES and check_diagonalizer(v.witness_P, [[0, 1], [1, 1]]))
    v = diagonalizable_over_Z([[0, 1], [1, 0]])
    results.append((v.decision, v.obstruction) == (NO, "even-form"))
    v = diagonalizable_over_Z(E8)
    results.append((v.decision, v.obstruction) == (NO, "even-form"))
    v = diagonalizable_over_Z(E8_1)
    results.append((v.decision, v.obstruction) == (NO, "definite-no-unit-splitting"))
    # every yes-witness re-verified by explicit congruence
    Q = [[0, 1], [1, 1]]
    P = [list(r) for r in diagonalizable_over_Z(Q).witness_P]
    D = intmat.matmul(intmat.matmul(P, Q), intmat.transpose(P))
    results.append(abs(intmat.det(P)) == 1 and D in ([[1, 0], [0, -1]], [[-1, 0], [0, 1]]))
    report(6, all(results),
           "yes on [[0,1],[1,1]] with re-verified witness; no on hyperbolic plane, E8 (even), "
           "E8+[1] (definite splitting)")


def test_criterion_7_determinant_chain(report):
    table = _table()
    certs = bundled_certificates()
    checked = failed = 0
    for rec in table.values():
        r = bounds_report(rec.seifert, certs.get(rec.name, ()), name=rec.name)
        if r.certificate is None:
            continue
        checked += 1
        A = r.certificate.A
        target = predicted_target_alexander(A, r.delta)
        ok = doteq(determinant(A), r.delta) and target is not None and doteq(target, ONE)
        ok = ok and normalize_alexander(target) == ONE
        failed += not ok
    report(7, failed == 0 and checked >= 6,
           f"{checked - failed}/{checked} passing certificates satisfy det(A) ~ Delta and target Delta ~ 1")


def test_criterion_8_determinism(report, tmp_path):
    recs = bundled_table()
    certs = bundled_certificates()
    outs = [dumps(run_report(recs, certificates=certs, threads=t)) for t in (1, 2, 4, 8)]
    outs.append(dumps(run_report(recs, certificates=certs, threads=1)))
    cli = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        subprocess.run([sys.executable, "-m", "knotua", "report", "--threads", str(1 + 3 * i), "--json", str(path)],
                       check=True)
        cli.append(path.read_bytes())
    ok = len(set(outs)) == 1 and cli[0] == cli[1] == outs[0].encode("utf-8")
    report(8, ok, "batch report byte-identical across 1/2/4/8 threads, repeated runs and the CLI")
