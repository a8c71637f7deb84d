import json
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlab.algebra.text import ParseError
from cmlab.cli import main
from cmlab.runner import bundled_scenarios, emit_json, run, run_text
from cmlab.scenario import CheckStmt, OpStmt, Pool, RangePool, format_scenario, parse_scenario

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())

# ---------------------------------------------------------------- grammar

atoms = st.sampled_from(["x", "y", "x + y", "x^2", "x*y - 3", "2*x - y^3", "-x", "(x + 1)^2"])
seq = st.lists(atoms, min_size=1, max_size=3).map(lambda xs: "(" + ", ".join(xs) + ")")
contexts = st.sampled_from([
    "QQ[x,y]",
    "GF(32003)[x,y]/(x*y)",
    "QQ[x,y] at (x, y)",
    "trivext(QQ[x,y] at (x, y), level=1)",
    "valuation(rank=2)",
    "badring(N=3)",
    "subring(B=8)",
    "action(QQ[x,y]; [[1, 0], [0, 1]], [[-1, 0], [0, -1]])",
])
values = st.sampled_from(["", " expect true", " expect false", " expect 2", " expect infinity",
                          " expect clean", ' expect "QQ[A,B]"', " expect -1"])
kinds = st.sampled_from(["wpr", "param", "sps", "regular", "pgrade", "grade", "height", "unmixed", "profile"])


@st.composite
def statements(draw):
    which = draw(st.integers(0, 4))
    if which == 0:
        return draw(contexts)
    if which == 1:
        return f"check {draw(kinds)} {draw(seq)}{draw(values)}"
    if which == 2:
        return f"check {draw(kinds)} {draw(seq)} in {draw(contexts)}{draw(values)}"
    if which == 3:
        pool = draw(st.lists(seq, min_size=1, max_size=3))
        return f"check cm [{', '.join(pool)}]{draw(values)}"
    return draw(st.sampled_from(["example37(n=3)", "colon_chain()", "invariants()", "retraction(samples=5)"])) + draw(values)


@given(st.lists(statements(), max_size=6), st.sampled_from(["\n", "; ", "\n\n"]), st.booleans())
def test_format_is_a_fixed_point_of_parsing(stmts, sep, named):
    text = ("scenario a/b\n" if named else "") + sep.join(stmts)
    once = format_scenario(parse_scenario(text))
    assert format_scenario(parse_scenario(once)) == once
    assert parse_scenario(once) == parse_scenario(text)


def test_parse_examples():
    sc = parse_scenario("scenario t\nQQ[x,y]\ncheck sps (x, y) expect true; check cm from (x, y) upto 2")
    assert sc.name == "t"
    chk = sc.statements[1]
    assert isinstance(chk, CheckStmt) and chk.kind == "sps" and chk.expect is True
    assert isinstance(sc.statements[2].target, RangePool)
    single = parse_scenario("check cm (x) in QQ[x]").statements[0]
    assert isinstance(single.target, Pool)
    op = parse_scenario('invariants(bound=4) expect "QQ[A]"').statements[0]
    assert isinstance(op, OpStmt) and op.args == (("bound", 4),)


@pytest.mark.parametrize("text,where", [
    ("check foo (x)", (1, 7)),
    ("QQ[x]\ncheck sps [(x)]", (2, 7)),
    ("check sps (x) in QQ[x] extra", (1, 24)),
    ("invariants(n=2)", (1, 12)),
    ("scenario a\nscenario b", None),
])
def test_syntax_errors_report_positions(text, where):
    with pytest.raises(ParseError) as e:
        parse_scenario(text)
    if where:
        assert (e.value.line, e.value.col) == where


# ---------------------------------------------------------------- runner

def test_report_matches_schema():
    rep = run_text("QQ[x,y]\ncheck regular (x, y) expect true\ncheck pgrade (x) in badring(N=3)\ncheck sps (x*y)")
    jsonschema.validate(rep.to_json(timings=True), SCHEMA)
    assert [c.status for c in rep.checks] == ["pass", "info", "info"]


def test_output_is_deterministic_across_runs_and_jobs():
    text = bundled_scenarios()["bundled/valuation_pair"]
    a = emit_json(run(parse_scenario(text)))
    b = emit_json(run(parse_scenario(text)))
    c = emit_json(run(parse_scenario(text), jobs=4))
    assert a == b == c


def test_timings_only_on_request():
    rep = run_text("check height (x) in QQ[x]")
    assert "seconds" not in rep.to_json()["checks"][0]
    assert "seconds" in rep.to_json(timings=True)["checks"][0]


def test_exit_codes():
    assert run_text("").exit_code == 0
    assert run_text("check height (x) in QQ[x] expect 1").exit_code == 0
    assert run_text("check height (x) in QQ[x] expect 2").exit_code == 1
    assert run_text("check cm [(x)] in trivext(QQ[x,y] at (x, y), level=1)").exit_code == 1
    assert run_text("check height (x)").exit_code == 2  # no context
    assert run_text("check param (x*y) in badring(N=3)").exit_code == 2  # unsupported element


def test_budget_exhaustion_is_an_error():
    rep = run_text("check grade (x^3*y + z^5, x*y*z - 1, z^7 - y) in QQ[x,y,z]", budget=5)
    assert rep.checks[0].status == "error"
    assert "budget" in rep.checks[0].detail["error"]


def test_environment_budget(monkeypatch):
    monkeypatch.setenv("CMLAB_BUDGET", "77")
    assert run_text("check height (x) in QQ[x]").budget == 77


@pytest.mark.parametrize("name", sorted(bundled_scenarios()))
def test_bundled_scenarios_pass(name):
    rep = run(parse_scenario(bundled_scenarios()[name]))
    bad = [c.to_json() for c in rep.checks if c.status in ("fail", "error", "violation") and "expect" in c.statement]
    assert rep.exit_code == 0, bad
    assert rep.scenario == name


# ---------------------------------------------------------------- command line

def test_cli_check_json(capsys):
    assert main(["check", "check sps (x, y) in QQ[x,y] expect true"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["checks"][0]["status"] == "pass"


def test_cli_text_format(capsys):
    assert main(["check", "--format", "text", "check height (x) in QQ[x] expect 3"]) == 1
    assert "fail" in capsys.readouterr().out


def test_cli_syntax_error(capsys):
    assert main(["check", "check sps ("]) == 2
    assert "syntax error" in capsys.readouterr().err


def test_cli_run_file_and_bundled(tmp_path, capsys):
    f = tmp_path / "s.cml"
    f.write_text("QQ[x,y]\ncheck param (x, y) expect true\n")
    assert main(["run", str(f)]) == 0
    capsys.readouterr()
    assert main(["run", "bundled/subring_colon", "--jobs", "2"]) == 0
    assert main(["run", "bundled/nope"]) == 2


def test_cli_lists_bundled(capsys):
    assert main(["list-scenarios"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in bundled_scenarios())
