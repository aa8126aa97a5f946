"""Command line interface: ``knotua <subcommand> ...``.

Single-knot subcommands take a knot name from the table (the bundled one
unless ``--table`` is given) or a literal Seifert matrix via ``--seifert``
in the ``a, b; c, d`` format.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from knotua import BACKEND, __version__
from knotua.blanchfield import CONVENTION, blanchfield_table, pairing_audit
from knotua.certificates import (
    DEFAULT_DEGREE_BOUND,
    DEFAULT_HEIGHT_BOUND,
    DEFAULT_RADIUS,
    BoundsOptions,
    load_certificate,
    render_certificate,
    verify_certificate,
)
from knotua.errors import CertificateError, KnotUAError
from knotua.laurent import render
from knotua.orders import DEFAULT_PRIMES, nakanishi_lower_bound, snf_over_fp
from knotua.report import (
    KnotRecord,
    ReportDocument,
    bundled_certificates,
    bundled_table,
    dumps,
    emit_json,
    knot_entry,
    load_certificate_dir,
    parse_table,
    run_report,
)
from knotua.seifert import (
    alexander_polynomial,
    levine_tristram_signature,
    presentation_matrix,
    signature_at_minus_one,
    validate_seifert,
)


def _primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def _resolve(args) -> KnotRecord:
    if args.seifert is not None:
        text = args.seifert.strip()
        rows = [[int(x) for x in r.split(",")] for r in text.split(";")] if text else []
        V = validate_seifert(rows)
        return KnotRecord(args.knot or "input", V.genus, V)
    if not args.knot:
        raise SystemExit("give a knot name or --seifert")
    records = parse_table(args.table) if args.table else bundled_table()
    for rec in records:
        if rec.name == args.knot:
            return rec
    raise SystemExit(f"knot {args.knot!r} not found in table")


def _options(args) -> BoundsOptions:
    return BoundsOptions(
        primes=args.primes,
        degree_bound=args.degree_bound,
        height_bound=args.height_bound,
        radius=args.radius,
        search=not args.no_search,
    )


def cmd_alex(args) -> int:
    rec = _resolve(args)
    print(render(alexander_polynomial(rec.seifert)))
    return 0


def cmd_sig(args) -> int:
    rec = _resolve(args)
    if args.theta is None:
        print(signature_at_minus_one(rec.seifert))
    else:
        print(levine_tristram_signature(rec.seifert, Fraction(args.theta)).value)
    return 0


def cmd_nakanishi(args) -> int:
    rec = _resolve(args)
    M = presentation_matrix(rec.seifert)
    for p in args.primes:
        snf = snf_over_fp(M, p)
        factors = ", ".join(" ".join(str(c) for c in f) for f in snf.invariant_factors) or "-"
        print(f"p={p}: {snf.nontrivial_count} non-unit factor(s) [{factors}]")
    print(f"lower bound: {nakanishi_lower_bound(M, args.primes)}")
    return 0


def cmd_blanchfield(args) -> int:
    rec = _resolve(args)
    B = blanchfield_table(rec.seifert)
    print(f"# {CONVENTION}")
    print(f"# Delta = {render(B.delta)}")
    for i, row in enumerate(B.table):
        for j, entry in enumerate(row):
            print(f"Bl(e{i + 1}, e{j + 1}) = {entry}")
    audit = pairing_audit(B)
    for name, ok in audit.checks.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}")
    return 0 if audit.passed else 1


def cmd_certify(args) -> int:
    rec = _resolve(args)
    cert = load_certificate(args.cert)
    try:
        checked = verify_certificate(rec.seifert, cert, args.radius)
    except CertificateError as exc:
        print(f"FAIL {type(exc).__name__}: {exc}")
        return 1
    print(f"PASS n = {checked.n}, (n+, n-) = ({checked.n_plus}, {checked.n_minus})")
    return 0


def cmd_bounds(args) -> int:
    rec = _resolve(args)
    certs = [load_certificate(p) for p in args.cert or ()]
    entry = knot_entry(rec, certs, _options(args))
    doc = ReportDocument(reports=[entry])
    if args.json:
        emit_json(doc, args.json)
    else:
        if entry.get("error"):
            print(f"{rec.name}: error: {entry['error']}")
        else:
            tag = "certified" if entry["upper_certified"] else "uncertified"
            print(f"{rec.name}: Delta = {entry['delta']}, sigma = {entry['sigma_minus1']}")
            print(f"{entry['lower']} <= u_a <= {entry['upper']} ({tag}), status {entry['status']}")
            if entry["n_plus"] is not None:
                print(f"signed counts (n+, n-) = ({entry['n_plus']}, {entry['n_minus']})")
            if entry["certificate_text"]:
                sys.stdout.write(entry["certificate_text"])
    return 0 if doc.ok else 1


def cmd_report(args) -> int:
    records = parse_table(args.table) if args.table else bundled_table()
    certs = {} if args.table or args.no_bundled_certs else bundled_certificates()
    if args.cert_dir:
        for name, cs in load_certificate_dir(args.cert_dir).items():
            certs.setdefault(name, []).extend(cs)
    doc = run_report(records, _options(args), certs, threads=args.threads)
    if args.json:
        emit_json(doc, args.json)
    else:
        sys.stdout.write(dumps(doc))
    return 0 if doc.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotua", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"knotua {__version__} ({BACKEND} kernels)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def knot_args(p):
        p.add_argument("knot", nargs="?", help="knot name in the table")
        p.add_argument("--seifert", help="Seifert matrix literal, rows ';' entries ','")
        p.add_argument("--table", help="CSV knot table (default: bundled)")

    def search_args(p):
        p.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES)
        p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND)
        p.add_argument("--height-bound", type=int, default=DEFAULT_HEIGHT_BOUND)
        p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
        p.add_argument("--no-search", action="store_true", help="only verify supplied certificates")
        p.add_argument("--json", metavar="OUT", help="write JSON report ('-' for stdout)")

    p = sub.add_parser("alex", help="normalized Alexander polynomial")
    knot_args(p)
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("sig", help="signature, or Levine-Tristram signature with --theta")
    knot_args(p)
    p.add_argument("--theta", help="rational in (0, 1); omega = exp(2 pi i theta)")
    p.set_defaults(func=cmd_sig)

    p = sub.add_parser("nakanishi", help="mod-p Smith normal form lower bound")
    knot_args(p)
    p.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES)
    p.set_defaults(func=cmd_nakanishi)

    p = sub.add_parser("blanchfield", help="Blanchfield pairing table and audit")
    knot_args(p)
    p.set_defaults(func=cmd_blanchfield)

    p = sub.add_parser("certify", help="verify a certificate file")
    knot_args(p)
    p.add_argument("--cert", required=True)
    p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bounds", help="lower and upper bounds for one knot")
    knot_args(p)
    p.add_argument("--cert", action="append", help="certificate file (repeatable)")
    search_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("report", help="batch report over a knot table")
    p.add_argument("--table", help="CSV knot table (default: bundled)")
    p.add_argument("--cert-dir", help="directory of <knot>.cert files")
    p.add_argument("--no-bundled-certs", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    search_args(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except KnotUAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
