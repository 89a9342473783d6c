import json
import subprocess
import sys

import pytest

from depthlab.cli import Session, emit_report, example_registry, format_script, parse_script, run_command
from depthlab.cli import commands
from depthlab.cli.main import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USER, main
from depthlab.cli.registry import names
from depthlab.grobner.expr import ParseError
from depthlab.invariants import FAILS
from depthlab.exactmath import RationalFunctionField
from depthlab.rings import PresentedRing

MINIMAL = "field Q; ring R = Q[x,y]/(x*y); module M = coker R [[x]];"

HYPERSURFACE_SCRIPT = """
field Q;
ring R = Q[x,y]/(x*y);
module A = quotient R (x);
module B = quotient R (y);
module L = quotient R (x+y);
module k = residue R;
qr A B window=8;
check dep L A;
measure L;
depth k;
resolve A window=4;
crosscheck torcutdown A k;
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- parsing

def test_minimal_script():
    s = parse_script(MINIMAL)
    assert len(s) == 3


def test_syntax_error_position():
    with pytest.raises(ParseError) as exc:
        parse_script("ring R = Q[x,y/(x)")
    assert exc.value.line == 1 and exc.value.col > 1


def test_undeclared_identifier():
    with pytest.raises(ParseError):
        parse_script("ring R = Q[x]; depth M;")


def test_inhomogeneous_polynomial():
    with pytest.raises(ParseError):
        parse_script("ring R = Q[x,y]/(x^2+y);")


def test_error_on_later_line():
    with pytest.raises(ParseError) as exc:
        parse_script("field Q;\nring R = Q[x];\nmodule M = coker R [[x;\n")
    assert exc.value.line == 3


@pytest.mark.parametrize("text", [MINIMAL, HYPERSURFACE_SCRIPT,
                                  "ring R = Fpt:7[x:2, y]/(x*y^2); complex K = koszul R (x, y^2); depth K;",
                                  "ring A = example js06; module k = residue A; module w = canonical A;"])
def test_round_trip(text):
    s = parse_script(text)
    printed = format_script(s)
    assert parse_script(printed) == s
    assert format_script(parse_script(printed)) == printed


def test_hypersurface_script_end_to_end():
    reports = Session().run_text(HYPERSURFACE_SCRIPT)
    by = [r.as_dict() for r in reports]
    assert by[0]["values"]["nonzero"] == [2, 4, 6, 8]
    assert by[1]["verdict"] == "holds"
    assert by[2]["values"]["depth"] == 0 and by[2]["values"]["is_CM"]
    assert by[3]["values"]["depth"] == 0
    assert by[4]["values"]["betti"][:3] == [1, 1, 1]
    assert by[5]["verdict"] != "fail"


# --- registry

@pytest.mark.parametrize("name", names())
def test_registry_round_trip(name):
    E = example_registry(name)
    s = parse_script(E["script"])
    assert parse_script(format_script(s)) == s
    assert E["provenance"]


@pytest.mark.parametrize("name", ["hypersurface_xy", "dual_numbers", "semigroup_345", "regular_n", "js06"])
def test_registry_integrity(name):
    R = example_registry(name)["ring"]
    fresh = PresentedRing(R.S, list(R.ideal_gens))
    assert (R.dim, R.depth, R.is_cm) == (fresh.dim, fresh.depth, fresh.is_cm)


def test_registry_artinian_examples():
    for name, n, m in (("i_alpha", 5, 10), ("js06", 4, 7)):
        R = example_registry(name)["ring"]
        assert R.n == n and len(R.ideal_gens) == m and R.dim == 0
        assert isinstance(R.field, RationalFunctionField) and R.field.base.p == 32003


def test_registry_hypersurface():
    R = example_registry("hypersurface_xy")["ring"]
    assert R.dim == 1 and R.is_cm and R.is_gorenstein


def test_registry_field_override():
    R = example_registry("js06", field="Qt")["ring"]
    assert R.dim == 0


def test_registry_unknown():
    with pytest.raises(KeyError):
        example_registry("no_such_ring")


# --- commands and reports

def test_depth_on_dual_numbers(capsys):
    code, out, _ = run_cli(capsys, "--ring", "dual_numbers", "depth", "k")
    d = json.loads(out)
    assert code == EXIT_OK and d["values"] == {"depth": 0, "dim": 0}
    assert d["schema"] == "depthlab/1"
    assert set(d) == {"schema", "command", "inputs", "window", "certification", "values", "verdict"}


def test_qr_hypersurface(capsys):
    code, out, _ = run_cli(capsys, "--ring", "hypersurface_xy", "qr", "quotient R (x)", "quotient R (y)",
                           "--window", "8")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["values"]["nonzero"] == [2, 4, 6, 8]
    assert d["certification"] == "window-only" and d["values"]["tail_vanishes"] is False


def test_crosscheck_negativeqr(capsys):
    code, out, _ = run_cli(capsys, "--ring", "dual_numbers", "crosscheck", "negativeqr", "k", "R")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "pass"


def test_measure_report_integers(capsys):
    code, out, _ = run_cli(capsys, "--ring", "hypersurface_xy", "measure", "quotient R (x)")
    v = json.loads(out)["values"]
    assert isinstance(v["depth"], int) and isinstance(v["dim"], int)


def test_survey_counts(capsys):
    code, out, _ = run_cli(capsys, "--ring", "hypersurface_xy", "survey", "dep", "--samples", "100",
                           "--seed", "3")
    v = json.loads(out)["values"]
    assert code == EXIT_OK and sum(v["counts"].values()) == 100 and v["failed_samples"] == []


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "text", "--ring", "dual_numbers", "depth", "k")
    assert code == EXIT_OK and out.startswith("== depth ==") and "depth  0" in out


def test_flags_after_subcommand(capsys):
    a = run_cli(capsys, "--ring", "hypersurface_xy", "--window", "4", "qr", "quotient R (x)", "quotient R (y)")
    b = run_cli(capsys, "qr", "quotient R (x)", "quotient R (y)", "--ring", "hypersurface_xy", "--window", "4")
    assert a == b and json.loads(a[1])["window"] == 4


def test_tor_single_index(capsys):
    code, out, _ = run_cli(capsys, "--ring", "dual_numbers", "tor", "k", "k", "--index", "3")
    assert code == EXIT_OK and json.loads(out)["values"]["module"]["length"] == 1


def test_run_script_file(tmp_path, capsys):
    p = tmp_path / "hyp.txt"
    p.write_text(HYPERSURFACE_SCRIPT)
    code, out, _ = run_cli(capsys, "run", str(p))
    assert code == EXIT_OK and len(json.loads(out)) == 6


def test_examples_listing(capsys):
    code, out, _ = run_cli(capsys, "examples")
    assert code == EXIT_OK and set(json.loads(out)["values"]) == set(names())


def test_determinism():
    argv = [sys.executable, "-m", "depthlab.cli.main", "--ring", "hypersurface_xy", "--seed", "7",
            "survey", "derived-dep", "--samples", "15"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a


def test_run_command_direct():
    R = example_registry("hypersurface_xy")["ring"]
    from depthlab.rings import PresentedModule
    M = PresentedModule.quotient(R, [R.S.parse("x")])
    rep = run_command("br", [M, M], {}, window=4)
    # Hom(F, R/x) has maps 0, y, 0, y, ... and y is injective on k[y]
    assert rep.as_dict()["values"]["nonzero"] == [2, 4]
    assert json.loads(emit_report(rep))["command"] == "br"


# --- exit codes

def test_exit_user_errors(capsys):
    assert run_cli(capsys, "--ring", "nope", "depth", "k")[0] == EXIT_USER
    assert run_cli(capsys, "--ring", "dual_numbers", "depth", "quotient R (x")[0] == EXIT_USER
    assert run_cli(capsys, "--ring", "dual_numbers", "crosscheck", "nolemma", "k", "k")[0] == EXIT_USER
    assert run_cli(capsys, "--ring", "dual_numbers", "qr", "k", "k", "--window", "0")[0] == EXIT_USER
    assert run_cli(capsys, "run", "/nonexistent/script")[0] == EXIT_USER
    code, _, err = run_cli(capsys, "survey", "dep")
    assert code == EXIT_USER and "needs --ring" in err


def test_syntax_error_message(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("field Q;\nring R = Q[x,y/(x);\n")
    code, _, err = run_cli(capsys, "run", str(p))
    assert code == EXIT_USER and "line 2" in err


def test_exit_fail_on_failed_verdict(capsys, monkeypatch):
    # no certified failure exists on these small rings, so the verdict is forced
    real = commands.check_depth_formula

    def forced(*a, **k):
        rep = real(*a, **k)
        rep.verdict = FAILS
        return rep
    monkeypatch.setattr(commands, "check_depth_formula", forced)
    code, out, _ = run_cli(capsys, "--ring", "hypersurface_xy", "check", "dep", "quotient R (x+y)",
                           "quotient R (x)")
    assert code == EXIT_FAIL and json.loads(out)["verdict"] == FAILS


def test_exit_internal_on_theorem_failure(capsys, monkeypatch):
    from depthlab.invariants import CrosscheckReport

    monkeypatch.setattr(commands, "lemma_crosscheck",
                        lambda kind, *a, **k: CrosscheckReport(kind, "fail", {}, "forced"))
    code, _, err = run_cli(capsys, "--ring", "dual_numbers", "crosscheck", "negativeqr", "k", "R")
    assert code == EXIT_INTERNAL and "internal assertion" in err


def test_timeout_exit(capsys):
    code, _, err = run_cli(capsys, "--timeout", "0.05", "--ring", "i_alpha", "qr", "k", "k", "--window", "8")
    assert code == EXIT_USER and "timed out" in err
