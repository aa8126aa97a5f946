import json

import pytest

from knotua.certificates import BoundsOptions
from knotua.errors import NotSeifert, ParseError
from knotua.report import (
    ReportDocument,
    bundled_table,
    dumps,
    emit_json,
    load_certificate_dir,
    parse_record,
    parse_table,
    parse_table_text,
    render_record,
    run_report,
)

FIELDS = ["name", "delta", "sigma_minus1", "nakanishi_lb", "lower", "upper", "upper_certified", "n_plus", "n_minus", "status"]


def test_parse_record_examples():
    rec = parse_record("3_1;1;-1,1,0,-1;")
    assert rec.name == "3_1" and rec.seifert.V == ((-1, 1), (0, -1)) and rec.known_ua is None
    rec = parse_record("0_1;0;;")
    assert rec.seifert.size == 0
    with pytest.raises(NotSeifert) as exc:
        parse_record("bad;1;1,0,0,1;", 7)
    assert exc.value.line == 7


@pytest.mark.parametrize("row", ["a;1;1,2,3;", "a;x;;", ";0;;", "a;-1;;", "a;1;1,2", "a;0;;1;extra"])
def test_parse_record_errors(row):
    with pytest.raises(ParseError):
        parse_record(row, 3)


def test_parse_table_line_numbers(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("name;genus;entries;known\n# comment\n\n3_1;1;-1,1,0,-1;1\nbad;1;1,0,0,1;\n", encoding="utf-8")
    with pytest.raises(NotSeifert) as exc:
        parse_table(p)
    assert exc.value.line == 5
    assert "line 5" in str(exc.value)


def test_parse_table_missing_file(tmp_path):
    with pytest.raises(OSError):
        parse_table(tmp_path / "missing.csv")


def test_table_round_trip():
    recs = bundled_table()
    assert [r.name for r in recs] == ["0_1", "3_1", "4_1", "5_1", "5_2", "granny", "square"]
    text = "\n".join(render_record(r) for r in recs)
    assert parse_table_text(text) == recs


def test_run_report_examples(table, bundled_certs):
    doc = run_report([table["3_1"]])
    (entry,) = doc.reports
    assert entry["status"] == "exact" and entry["upper"] == 1
    assert run_report([]).reports == []
    doc = run_report([table["granny"]], BoundsOptions(search=False), bundled_certs)
    assert doc.reports[0]["status"] == "exact" and doc.reports[0]["upper"] == 2
    assert doc.reports[0]["certificate"] == "bundled:granny.cert"


def test_json_shape(table, tmp_path):
    doc = run_report([table["3_1"]])
    data = json.loads(dumps(doc))
    assert list(data)[:4] == ["tool", "version", "convention", "reports"]
    entry = data["reports"][0]
    assert entry["delta"] == "t - 1 + t^-1"
    keys = list(entry)
    assert [k for k in keys if k in FIELDS] == FIELDS
    out = tmp_path / "r.json"
    emit_json(doc, out)
    assert out.read_text(encoding="utf-8") == dumps(doc)


def test_empty_document():
    data = json.loads(dumps(ReportDocument()))
    assert data["reports"] == [] and data["tool"] == "knotua"


def test_failed_certificate_document(table, tmp_path):
    (tmp_path / "3_1.cert").write_text("A: t + 1 + t^-1\nS: 1; 0\n", encoding="utf-8")
    certs = load_certificate_dir(tmp_path)
    doc = run_report([table["3_1"]], BoundsOptions(search=False), certs)
    entry = json.loads(dumps(doc))["reports"][0]
    assert entry["status"] == "interval" and entry["upper_certified"] is False
    assert entry["certificate"] == "none"
    assert entry["certificate_failures"]


def test_every_report_names_certificate(table, bundled_certs):
    doc = run_report(list(table.values()), certificates=bundled_certs)
    for e in doc.reports:
        assert e["certificate"] == "none" or e["certificate"] in ("search", "block-sum", "degenerate") \
            or e["certificate"].startswith("bundled:")


def test_known_ua_regression_guard(table, bundled_certs):
    doc = run_report(list(table.values()), certificates=bundled_certs)
    for e in doc.reports:
        if e["known_ua"] is not None:
            assert e["lower"] <= e["known_ua"] <= e["upper"]


def test_per_knot_errors_do_not_abort(table, monkeypatch):
    import knotua.report as report_mod
    from knotua.errors import KnotUAError

    real = report_mod.bounds_report

    def flaky(V, certs, options, name=""):
        if name == "4_1":
            raise KnotUAError("boom")
        return real(V, certs, options, name=name)

    monkeypatch.setattr(report_mod, "bounds_report", flaky)
    doc = run_report([table["3_1"], table["4_1"], table["5_2"]])
    assert [e["name"] for e in doc.reports] == ["3_1", "4_1", "5_2"]
    assert doc.reports[1]["error"] and not doc.ok
    assert doc.reports[2]["status"] == "exact"


def test_thread_count_determinism(table, bundled_certs):
    recs = list(table.values())
    a = dumps(run_report(recs, certificates=bundled_certs, threads=1))
    b = dumps(run_report(recs, certificates=bundled_certs, threads=4))
    assert a == b
