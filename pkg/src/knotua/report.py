"""Knot tables, batch bound computation and JSON reports.

Table rows are ``name;genus;entries;known_ua`` with the Seifert matrix
entries row-major and comma separated. Blank lines, ``#`` comments and a
header row starting with ``name;`` are skipped.
"""
from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from knotua import __version__
from knotua.blanchfield import CONVENTION
from knotua.certificates import (
    BoundsOptions,
    Certificate,
    bounds_report,
    load_certificate,
    parse_certificate,
    render_certificate,
)
from knotua.errors import KnotUAError, NotSeifert, ParseError
from knotua.laurent import render
from knotua.seifert import SeifertMatrix, validate_seifert


@dataclass(frozen=True)
class KnotRecord:
    name: str
    genus: int
    seifert: SeifertMatrix
    known_ua: int | None = None


def parse_record(line: str, lineno: int | None = None) -> KnotRecord:
    fields = line.split(";")
    if len(fields) == 3:
        fields.append("")
    if len(fields) != 4:
        raise ParseError(f"expected 4 ';'-separated fields, got {len(fields)}", lineno)
    name, genus_s, entries_s, known_s = (f.strip() for f in fields)
    if not name:
        raise ParseError("empty knot name", lineno)
    try:
        genus = int(genus_s)
        entries = [int(x) for x in entries_s.split(",")] if entries_s else []
        known = int(known_s) if known_s else None
    except ValueError as exc:
        raise ParseError(f"bad integer: {exc}", lineno) from None
    if genus < 0:
        raise ParseError("negative genus", lineno)
    n = 2 * genus
    if len(entries) != n * n:
        raise ParseError(f"genus {genus} needs {n * n} entries, got {len(entries)}", lineno)
    rows = [entries[i * n:(i + 1) * n] for i in range(n)]
    try:
        V = validate_seifert(rows)
    except NotSeifert as exc:
        raise NotSeifert(str(exc), lineno) from None
    return KnotRecord(name, genus, V, known)


def parse_table_text(text: str) -> list[KnotRecord]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line.lower().startswith("name;"):
            continue
        records.append(parse_record(line, lineno))
    return records


def parse_table(path) -> list[KnotRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_table_text(fh.read())


def render_record(rec: KnotRecord) -> str:
    known = "" if rec.known_ua is None else str(rec.known_ua)
    return f"{rec.name};{rec.genus};{','.join(str(x) for x in rec.seifert.flat())};{known}"


def bundled_table() -> list[KnotRecord]:
    return parse_table_text(resources.files("knotua").joinpath("data/knots.csv").read_text("utf-8"))


def bundled_certificates() -> dict[str, list[Certificate]]:
    out = {}
    for entry in sorted(resources.files("knotua").joinpath("data/certs").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".cert"):
            cert = parse_certificate(entry.read_text("utf-8"), source=f"bundled:{entry.name}")
            out.setdefault(entry.name[: -len(".cert")], []).append(cert)
    return out


def load_certificate_dir(path) -> dict[str, list[Certificate]]:
    out: dict[str, list[Certificate]] = {}
    for p in sorted(Path(path).glob("*.cert")):
        out.setdefault(p.stem, []).append(load_certificate(p))
    return out


@dataclass
class ReportDocument:
    version: str = __version__
    convention: str = CONVENTION
    reports: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.get("error") is None for r in self.reports)

    def to_dict(self) -> dict:
        return {"tool": "knotua", "version": self.version, "convention": self.convention, "reports": self.reports}


def knot_entry(rec: KnotRecord, certs: Sequence[Certificate], options: BoundsOptions) -> dict:
    try:
        r = bounds_report(rec.seifert, certs, options, name=rec.name)
    except KnotUAError as exc:
        return {"name": rec.name, "error": f"{type(exc).__name__}: {exc}", "certificate": "none"}
    cert = r.certificate
    return {
        "name": rec.name,
        "delta": render(r.delta),
        "sigma_minus1": r.sigma_minus1,
        "nakanishi_lb": r.nakanishi_lb,
        "lower": r.lower,
        "lower_sources": r.lower_sources,
        "upper": r.upper,
        "upper_certified": r.upper_certified,
        "generic_upper": r.generic_upper,
        "n_plus": r.signed[0] if r.signed else None,
        "n_minus": r.signed[1] if r.signed else None,
        "status": r.status,
        "known_ua": rec.known_ua,
        "certificate": cert.source if cert is not None else "none",
        "certificate_text": render_certificate(cert) if cert is not None else None,
        "certificate_failures": r.certificate_failures,
        "error": None,
    }


def run_report(records: Sequence[KnotRecord], options: BoundsOptions | None = None,
               certificates: Mapping[str, Sequence[Certificate]] | None = None,
               threads: int = 1) -> ReportDocument:
    """Bounds for every record; output order follows the input order."""
    options = options or BoundsOptions()
    certificates = certificates or {}
    jobs = [(rec, list(certificates.get(rec.name, ()))) for rec in records]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(lambda job: knot_entry(job[0], job[1], options), jobs))
    else:
        entries = [knot_entry(rec, certs, options) for rec, certs in jobs]
    return ReportDocument(reports=entries)


def dumps(doc: ReportDocument) -> str:
    return json.dumps(doc.to_dict(), indent=2) + "\n"


def emit_json(doc: ReportDocument, path) -> None:
    text = dumps(doc)
    if str(path) == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
