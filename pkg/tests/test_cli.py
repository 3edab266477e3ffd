"""Unit tests for the command-line front end: commands, flags, config
files, and exit codes."""

import pytest

from conftest import DATA, GOLDEN

EX1 = str(DATA / "example1.ct")
EX2 = str(DATA / "example2.ct")
EX4 = str(DATA / "example4.ct")
EX7 = str(DATA / "example7.ct")
EX567 = str(DATA / "examples567.ct")
EMPTYP = str(DATA / "empty_explainable.ct")


def test_translate_formula_format(run_cli):
    code, out, _ = run_cli("translate", EX1)
    assert code == 0
    assert out.splitlines() == [
        "~~~q -> p", "~~p -> q_hat",
        "~(p & p_hat)", "~(~p & ~p_hat)",
        "~(q & q_hat)", "~(~q & ~q_hat)"]


def test_translate_asp_matches_emit(run_cli):
    code, out, _ = run_cli("translate", EX7, "--simplify", "--format", "asp",
                           "--legacy-lparse")
    assert code == 0
    assert out == (GOLDEN / "fig2_legacy.lp").read_text()
    code2, out2, _ = run_cli("emit", EX7, "--simplify", "--legacy-lparse")
    assert code2 == 0 and out2 == out


def test_models_causal(run_cli):
    code, out, _ = run_cli("models", EX1)
    assert code == 0 and out.strip() == "p"


def test_models_stable_and_project(run_cli):
    code, out, _ = run_cli("models", EX1, "--semantics", "stable")
    assert code == 0 and out.strip() == "p -q"
    code, out, _ = run_cli("models", EX1, "--semantics", "stable",
                           "--project")
    assert code == 0 and out.strip() == "p"


def test_models_completion(run_cli):
    code, out, _ = run_cli("models", EX2, "--semantics", "completion")
    assert code == 0 and out.strip() == "p(a)"


def test_models_zero(run_cli, tmp_path):
    f = tmp_path / "unsat.ct"
    f.write_text("universe d. explainable p/0. false <= true.\n"
                 "p <= p. ~p <= ~p.")
    code, out, _ = run_cli("models", str(f))
    assert code == 0 and out.strip() == "0 models"


def test_verify_pass_and_fuzz(run_cli):
    code, out, _ = run_cli("verify", EX567)
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run_cli("verify", "--fuzz", "25", "--seed", "3")
    assert code == 0 and "PASS 25/25" in out


def test_verify_corrupt_hook_fails(run_cli):
    code, out, _ = run_cli("verify", EMPTYP, "--corrupt")
    assert code == 2
    assert "FAIL" in out and "not causal" in out


def test_parse_error_exit_code(run_cli, tmp_path):
    f = tmp_path / "bad.ct"
    f.write_text("universe a. explainable p/0. p <= @.")
    code, _, err = run_cli("models", str(f))
    assert code == 1 and "line 1" in err


def test_usage_error_exit_code(run_cli):
    code, _, err = run_cli("models", EX1, "--semantics", "bogus")
    assert code == 1


def test_guardrail_exit_code(run_cli, tmp_path):
    f = tmp_path / "big.ct"
    rules = "\n".join(f"p{i}(X) <= ~p{i}(X)." for i in range(5))
    f.write_text("universe c1, c2, c3, c4, c5, c6.\n"
                 "explainable p0/1, p1/1, p2/1, p3/1, p4/1.\n" + rules)
    code, _, err = run_cli("models", str(f))
    assert code == 3 and "desk-scale" in err


def test_config_file_defaults(run_cli, tmp_path):
    cfg = tmp_path / "causelp.cfg"
    cfg.write_text("# defaults\nsemantics = stable\nproject = true\n")
    code, out, _ = run_cli("models", EX1, "--config", str(cfg))
    assert code == 0 and out.strip() == "p"
    # command line wins over the config file
    code, out, _ = run_cli("models", EX1, "--config", str(cfg),
                           "--semantics", "causal")
    assert code == 0 and out.strip() == "p"


def test_solve_internal(run_cli):
    code, out, _ = run_cli("solve", EX7, "--simplify")
    assert code == 0
    assert "Answer: 1" in out
    assert "Stable Model:" in out
    assert "-dark" in out and "on1(myswitch)" in out


def test_solve_external_stub(run_cli, tmp_path):
    stub = tmp_path / "solver.sh"
    stub.write_text("#!/bin/sh\ncat > /dev/null\necho 'Answer: 1'\n"
                    "echo 'on1(myswitch) u(myswitch)'\n")
    stub.chmod(0o755)
    code, out, _ = run_cli("solve", EX7, "--simplify",
                           "--command", str(stub))
    assert code == 0 and "on1(myswitch)" in out


def test_deterministic_output(run_cli):
    results = {run_cli("models", EX567, "--semantics", "stable") for _ in
               range(2)}
    assert len(results) == 1
