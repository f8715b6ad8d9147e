import json

import pytest

from genusone import __version__
from genusone import checks
from genusone.checks import (CHECK_NAMES, REGISTRY, CheckDescriptor, CheckSpec, InvalidParams,
                             UnknownCheck, run_check, sweep)
from genusone.cli import main

SPEC_NAMES = ("prop1_1", "lemma1_2", "prop2_1", "prop2_2", "prop3_3", "prop3_4", "sec4_fields",
              "cor6_2_equiv", "cor6_3", "cor6_4_equiv", "cor6_5", "prop6_1", "prop7_1", "prop7_2",
              "prop7_3", "lemma8_2", "prop5_relations", "prop5_4_fitting", "disjointness")


def run_cli(args, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(args + ["--json", str(out)])
    text = capsys.readouterr().out
    payload = json.loads(out.read_text()) if out.exists() else None
    return code, payload, text


def test_catalog_complete():
    assert set(CHECK_NAMES) == set(SPEC_NAMES)


def test_prop2_1_example(tmp_path, capsys):
    code, payload, _ = run_cli(["--check", "prop2_1", "--p", "2", "--r", "2", "--i", "1"], tmp_path, capsys)
    assert code == 0
    assert payload["version"] == __version__
    (rep,) = payload["reports"]
    assert rep["passed"] and rep["details"]["h0Y"] == 1 and rep["details"]["h1Y"] == 1


def test_fitting_example():
    rep = run_check(CheckDescriptor("prop5_4_fitting", 5, 1, N=8))
    assert rep.passed and rep.details["unit_ideal"] is False


def test_prop3_3_rank_one_invalid(tmp_path, capsys):
    with pytest.raises(InvalidParams):
        run_check(CheckDescriptor("prop3_3", 7, 1))
    code, payload, _ = run_cli(["--check", "prop3_3", "--p", "7", "--r", "1"], tmp_path, capsys)
    assert code == 2 and payload is None


def test_prop7_1_large_quotient_not_ci(tmp_path, capsys):
    code, payload, _ = run_cli(["--check", "prop7_1", "--p", "2", "--r", "3", "--s", "0"], tmp_path, capsys)
    assert code == 0
    cases = payload["reports"][0]["details"]["cases"]
    assert cases and all(c["verdict"] == "not complete intersection" for c in cases)


def test_empty_grid(tmp_path, capsys):
    code, payload, _ = run_cli(["--check", "all", "--p", ""], tmp_path, capsys)
    assert code == 0 and payload["reports"] == []
    assert sweep(["prop2_1"], primes=[], ranks=[1]) == []


@pytest.mark.parametrize("args", [
    ["--check", "nonsense"],
    ["--check", "prop2_1", "--p", "11", "--r", "1"],
    ["--check", "prop2_1", "--p", "2", "--r", "1", "--s", "0", "--i", "0"],
    ["--check", "prop2_1", "--p", "x"],
    ["--check", "prop2_1", "--p", "2", "--r", "2", "--n", "9"],
    ["--check", "prop5_4_fitting", "--p", "5", "--r", "1", "--trunc", "20"],
    ["--p", "2"],
])
def test_invalid_invocations_exit_2(args, capsys):
    with pytest.raises(SystemExit) as exc:
        code = main(args)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_unknown_check_raises():
    with pytest.raises(UnknownCheck):
        run_check(CheckDescriptor("nonsense", 2, 1))


def test_failure_exits_1(tmp_path, capsys, monkeypatch):
    def always_fails(d):
        return False, {"mismatch": {"expected": 1, "got": 2}}
    monkeypatch.setitem(REGISTRY, "prop1_1", CheckSpec("prop1_1", always_fails, (2,), (1,), (2,), (1,)))
    code, payload, text = run_cli(["--check", "prop1_1", "--p", "2", "--r", "1"], tmp_path, capsys)
    assert code == 1
    rep = payload["reports"][0]
    assert rep["status"] == "failed" and rep["details"]["mismatch"]
    assert "FAILED" in text


def test_sweep_skips_outside_domain():
    reps = sweep(["prop3_3"], primes=[2], ranks=[1, 2])
    assert [r.status for r in reps] == ["skipped", "passed"]
    with pytest.raises(InvalidParams):
        sweep(["prop3_3"], primes=[2], ranks=[1], strict=True)


def test_sweep_small_grid_all_pass():
    reps = sweep([n for n in CHECK_NAMES if n not in ("prop1_1", "lemma1_2", "prop2_1")],
                 primes=[2, 3], ranks=[1, 2], seed=3)
    assert all(r.passed for r in reps)
    assert any(r.status == "passed" for r in reps)


def test_seeded_reports_are_reproducible(tmp_path, capsys):
    args = ["--check", "cor6_4_equiv", "--p", "3", "--r", "1", "--seed", "11"]
    _, a, _ = run_cli(args, tmp_path, capsys)
    _, b, _ = run_cli(args, tmp_path, capsys)
    assert a == b
    _, c, _ = run_cli(args[:-1] + ["12"], tmp_path, capsys)
    assert c["reports"][0]["params"]["seed"] == 12


def test_descriptor_rng_depends_on_seed():
    a = CheckDescriptor("lemma8_2", 2, 2, seed=1).rng().random()
    b = CheckDescriptor("lemma8_2", 2, 2, seed=1).rng().random()
    c = CheckDescriptor("lemma8_2", 2, 2, seed=2).rng().random()
    assert a == b != c


def test_timing_is_opt_in(tmp_path, capsys):
    _, plain, _ = run_cli(["--check", "disjointness", "--p", "2", "--r", "1"], tmp_path, capsys)
    _, timed, _ = run_cli(["--check", "disjointness", "--p", "2", "--r", "1", "--timing"], tmp_path, capsys)
    assert "elapsed_ms" not in plain["reports"][0]
    assert "elapsed_ms" in timed["reports"][0]


def test_pair_index_parses(tmp_path, capsys):
    code, payload, _ = run_cli(["--check", "prop1_1", "--p", "2", "--r", "2", "--i", "1,1"], tmp_path, capsys)
    assert code == 0 and payload["reports"][0]["params"]["i"] == "1,1"


def test_json_to_stdout(capsys):
    code = main(["--check", "disjointness", "--p", "3", "--r", "1", "--json", "-"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out)["reports"][0]["check"] == "disjointness"


def test_registry_docs_present():
    assert all(checks.REGISTRY[n].doc for n in CHECK_NAMES)
