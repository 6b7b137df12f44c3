"""Document round-trips, the set-expression grammar, and the CLI surface."""

import json
from pathlib import Path

import pytest

from ssu.cli import main
from ssu.docs import (
    document_digest,
    emit_document,
    example_document,
    format_set_expr,
    load_system,
    parse_set_expr,
)
from ssu.errors import ParseError, UnknownExample

GOLDEN = Path(__file__).parent / "golden"


def test_parse_set_expr():
    assert parse_set_expr("TAIL(v, i)") == ("tail", "v", 0)
    assert parse_set_expr("LTAIL(v, i-2)") == ("ltail", "v", -2)
    assert parse_set_expr("FIN{v[i], v[i+3]}") == ("fin", (("v", 0), ("v", 3)))
    expr = parse_set_expr("DIFF(UNION(TAIL(v, i), FIN{w[i-1]}), INTER(TAIL(v, i+2), TAIL(v, i+4)))")
    assert expr[0] == "diff"
    assert parse_set_expr(format_set_expr(expr)) == expr
    with pytest.raises(ParseError):
        parse_set_expr("TAIL(v)")
    with pytest.raises(ParseError):
        parse_set_expr("NOPE(v, i)")


def test_example_documents_round_trip():
    for name in ("ex5.1", "ex5.2", "ex5.3-trivial", "ex5.3(3,-3)", "ex5.3(2,1)"):
        doc = example_document(name)
        assert json.loads(emit_document(doc)) == doc
        assert document_digest(doc) == document_digest(json.loads(emit_document(doc)))
        load_system(doc).validate()
    with pytest.raises(UnknownExample):
        example_document("bogus")


def test_bundled_fixture_bytes():
    pairs = {
        "ex5.1": "doc_ex5_1.json",
        "ex5.2": "doc_ex5_2.json",
        "ex5.3-trivial": "doc_ex5_3_trivial.json",
        "ex5.3(3,-3)": "doc_ex5_3_3_m3.json",
    }
    for name, fn in pairs.items():
        assert emit_document(example_document(name)) == (GOLDEN / fn).read_text()


def test_trivial_cocycle_shorthand():
    doc = example_document("ex5.2")
    doc["cocycle"] = "trivial"
    sy = load_system(doc)
    assert sy.validate().is_holds()


def test_cli_validate(tmp_path):
    out = tmp_path / "doc.json"
    assert main(["example", "ex5.2", "-o", str(out)]) == 0
    assert main(["validate", str(out)]) == 0


def test_cli_analyze_json(tmp_path, capsys):
    out = tmp_path / "doc.json"
    main(["example", "ex5.2", "-o", str(out)])
    capsys.readouterr()
    assert main(["analyze", str(out), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report["checks"]) == {
        "minimal", "effective", "simple", "entrances", "condition_star"
    }
    assert all(v["status"] == "holds" for v in report["checks"].values())


def test_cli_exit_codes(tmp_path, capsys):
    doc = tmp_path / "doc.json"
    main(["example", "ex5.3-trivial", "-o", str(doc)])
    capsys.readouterr()
    # the trivial swapped-loop system fails the star condition: exit 2
    assert main(["analyze", str(doc)]) == 2
    # unknown example name and bad expressions: exit 1
    assert main(["example", "nope"]) == 1
    good = tmp_path / "good.json"
    main(["example", "ex5.2", "-o", str(good)])
    assert main(["semigroup", str(good), "(broken"]) == 1
    assert main(["bogus-subcommand"]) == 1


def test_cli_semigroup_eval(tmp_path, capsys):
    doc = tmp_path / "doc.json"
    main(["example", "ex5.2", "-o", str(doc)])
    capsys.readouterr()
    assert main(["semigroup", str(doc), "(w; {v,w}; 1; w) * (e; {v}; 0; e)"]) == 0
    assert capsys.readouterr().out.strip() == "(f; {w}; 1; e)"
    assert main(["semigroup", str(doc), "(e; {w}; 1; f)^-1"]) == 0
    assert capsys.readouterr().out.strip() == "(f; {v}; 1; e)"
    # annihilating product prints the zero element
    assert main(["semigroup", str(doc), "(e; {v}; 0; e) * (e; {w}; 0; e)"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_cli_theta(tmp_path, capsys):
    doc = tmp_path / "doc.json"
    main(["example", "ex5.2", "-o", str(doc)])
    capsys.readouterr()
    rc = main(["theta", str(doc), "--elem", "(w; {v,w}; 1; w)",
               "--filter", "lasso:/e"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "lasso:/f"
    idoc = tmp_path / "idoc.json"
    main(["example", "ex5.1", "-o", str(idoc)])
    capsys.readouterr()
    rc = main(["theta", str(idoc), "--elem", "(w; TAIL(v, -50); 2; w)",
               "--filter", "tail:w/v:pos"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "tail:w/v:pos"


def test_cli_algebra(tmp_path, capsys):
    doc = tmp_path / "doc.json"
    main(["example", "ex5.2", "-o", str(doc)])
    capsys.readouterr()
    rc = main(["algebra", str(doc),
               "1/2 * (e; {v,w}; 0; w) + 1/2 * (e; {v,w}; 0; w)"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "(e; {v, w}; 0; w)"
    rc = main(["algebra", str(doc),
               "(w; {v}; 0; w) * delta[1] * (w; {v}; 0; w) * delta[1]"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "0"
    rc = main(["algebra", str(doc), "(e; {v,w}; 0; w) * delta[1]", "--star"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "(w; {v, w}; 0; f) * delta[1]"


def test_report_stable_across_threads(tmp_path, capsys):
    doc = tmp_path / "doc.json"
    main(["example", "ex5.2", "-o", str(doc)])
    capsys.readouterr()
    outs = []
    for threads in ("1", "4"):
        main(["analyze", str(doc), "--json", "--threads", threads])
        report = json.loads(capsys.readouterr().out)
        del report["elapsed_s"]
        outs.append(json.dumps(report, sort_keys=True))
    assert outs[0] == outs[1]
