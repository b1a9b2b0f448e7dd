import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from heckelab import dsl
from heckelab.cli import main
from heckelab.interp import ExecError, dumps, execute, run_text

GOLDEN = Path(__file__).parent / "golden"
SCRIPTS = sorted(GOLDEN.glob("*.hk"))


def test_parse_binding_and_command():
    s = dsl.parse("let V = std_symplectic(0,0; 0); split V;")
    assert len(s.stmts) == 2
    assert isinstance(s.stmts[0], dsl.Let) and s.stmts[0].name == "V"
    assert s.stmts[0].expr == dsl.StdPair("symplectic", (0, 0), 0, None)
    assert s.stmts[1] == dsl.Command("split", (dsl.Var("V"),))


def test_parse_family_and_jumping():
    s = dsl.parse("let F = family_sympl(V, 0, [1,0,0,0]); jumping F;")
    call = s.stmts[0].expr
    assert isinstance(call, dsl.Call) and call.name == "family_sympl"
    assert call.args[2] == dsl.Vector(tuple(Fraction(c) for c in (1, 0, 0, 0)))
    assert s.stmts[1].name == "jumping"


def test_parse_error_location():
    with pytest.raises(dsl.ParseError) as ei:
        dsl.parse("let V = O(2 (+)")
    err = ei.value
    assert err.line == 1 and err.col == 13
    assert "')'" in err.expected
    with pytest.raises(dsl.ParseError) as ei:
        dsl.parse("split O(1);\nlet let = O(0);")
    assert (ei.value.line, ei.value.col) == (2, 5)
    with pytest.raises(dsl.ParseError):
        dsl.parse('degree {"n": 4.5};')


def test_print_roundtrip_and_idempotence():
    texts = [p.read_text() for p in SCRIPTS] + [
        "split (O(1) (+) O(2)) (+) O(3);",
        "let X = twist(dual(O(1)^3), -2); hn X;",
        "bounds g=3, n=4, delta=1;",
    ]
    for text in texts:
        ast = dsl.parse(text)
        canon = dsl.print_canonical(ast)
        assert dsl.parse(canon) == ast
        assert dsl.print_canonical(dsl.parse(canon)) == canon


def test_whitespace_mangled_input():
    a = dsl.parse("let V=std_symplectic(0,0;0);split V;")
    b = dsl.parse("  let   V =\n std_symplectic( 0 ,0 ;\n\t0 ) ;\n# note\n split\nV ;")
    assert dsl.print_canonical(a) == dsl.print_canonical(b)


def test_rationals_printed_in_lowest_terms():
    canon = dsl.print_canonical(dsl.parse("report hecke_sympl(V, 6/4, [2/4, 0, 0, 0]);"))
    assert "3/2" in canon and "1/2" in canon and "6/4" not in canon


def test_execute_examples():
    r = run_text("let V = std_symplectic(0,0; 0); split V;")
    assert r[0]["result"]["splitting"] == [[0, 4]]
    r = run_text("hn std_orthogonal(1; 0, mid=1);")
    assert [c["rank"] for c in r[0]["result"]["chain"]] == [1]
    assert r[0]["result"]["middle_rank"] == 1
    r = run_text('degree {"n": 4, "c2": 1};')
    assert r[0]["result"]["degree"] == "8"
    assert all(rep["schema"] == 1 for rep in r)


def test_jumping_report():
    r = run_text("let F = family_sympl(std_symplectic(0,0;0), 0, [1,0,0,0]); jumping F;")
    res = r[0]["result"]
    assert res["total_contribution"] == 1 and res["curve_degree"] == "8"
    assert res["jumps"][0]["splitting"] == [[1, 1], [0, 2], [-1, 1]]


def test_exec_errors():
    with pytest.raises(ExecError) as ei:
        run_text("split Y;")
    assert ei.value.index == 0
    with pytest.raises(ExecError):
        run_text("let V = O(1); hn V (+) std_symplectic(0,0;0);")
    with pytest.raises(ExecError):
        run_text("let P = std_symplectic(0,0;0); report hecke_orth(P, 0, [[1,0,0,0],[0,1,0,0]]);")
    with pytest.raises(ExecError):
        run_text('degree {"n": 4, "blocks": [{"a": 0, "r": 3}]};')


def test_reports_are_deterministic():
    for path in SCRIPTS:
        ast = dsl.parse(path.read_text())
        assert dumps(execute(ast, 0)) == dumps(execute(ast, 0))


@pytest.mark.parametrize("path", SCRIPTS, ids=lambda p: p.stem)
def test_golden_reports(path, tmp_path):
    out = tmp_path / "out.json"
    assert main(["run", str(path), "--json", str(out)]) == 0
    assert out.read_bytes() == path.with_suffix(".json").read_bytes()


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.hk"
    bad.write_text("let V = O(2 (+)")
    assert main(["run", str(bad)]) == 2
    unbound = tmp_path / "unbound.hk"
    unbound.write_text("split X;")
    assert main(["run", str(unbound)]) == 3
    capsys.readouterr()
    assert main(["split", "--expr", "O(1) (+) O(-1)"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["result"]["splitting"] == [[1, 1], [-1, 1]]
    assert main(["bounds", "--g", "5", "--n", "4", "--delta", "2", "--kind", "orth"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["result"]["unique_hom_region"] is False
    assert main(["selftest", "--cases", "4", "--seed", "1"]) == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heckelab.cli", "split", "--expr", "O(2)^2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["splitting"] == [[2, 2]]
