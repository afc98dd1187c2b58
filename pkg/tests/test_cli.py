import json
import os

import pytest

from sg_workbench.__main__ import (EXIT_INPUT_ERROR, EXIT_INVARIANT_BREACH, EXIT_VERIFICATION_FAILED,
                                   OUTPUT_DIR_VARIABLE, build_parser, main, read_config)
from sg_workbench.commands import COMMANDS
from sg_workbench.version import version

DUAL_NUMBERS_DOCUMENT = {
    "algebra": {
        "name": "dual",
        "field": {"type": "prime", "p": 3},
        "vertices": ["1"],
        "arrows": [["x", "1", "1"]],
        "relations": [[[1, "x*x"]]],
        "nilpotency_bound": 2,
    },
    "modules": {
        "k": {"dims": [1], "action": {"x": [[0]]}},
    },
}


@pytest.fixture(autouse=True)
def isolated_directory(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(OUTPUT_DIR_VARIABLE, raising=False)
    return tmp_path


def _exit_code(argv):
    with pytest.raises(SystemExit) as error:
        main(argv)
    return error.value.code


def _load(path):
    with open(path, encoding="utf-8") as report_file:
        return json.load(report_file)


def test_version_flag(capsys):
    assert _exit_code(["analyze", "-V"]) == 0
    assert version in capsys.readouterr().out


def test_analyze_writes_report(tmp_path):
    main(["analyze", "--corpus", "a2", "--output", str(tmp_path / "out")])
    report = _load(tmp_path / "out" / "analyze-A2.json")
    assert report["version"] == version
    assert report["command"] == "analyze"
    assert report["result"]["global_dimension"] == 1
    assert report["result"]["verdict"]["kind"] == "FiniteGlobalDimension"
    assert report["algebra"]["name"] == "A2"


def test_gamma_from_input_document(tmp_path):
    document = tmp_path / "dual.json"
    document.write_text(json.dumps(DUAL_NUMBERS_DOCUMENT), encoding="utf-8")
    main(["gamma", "--input", str(document), "--module", "k", "--range", "2", "--cutoff", "8",
          "--output", str(tmp_path / "out")])
    report = _load(tmp_path / "out" / "gamma-dual-k.json")
    entries = report["result"]["table"]["entries"]
    assert [entry["n"] for entry in entries] == [-2, -1, 0, 1, 2]
    assert [entry["value"] for entry in entries] == [1] * 5
    assert report["result"]["virtually_periodic"]


def test_reports_are_byte_identical_across_runs(tmp_path):
    for target in ("first", "second"):
        main(["leavitt", "--corpus", "truncated_polynomial:2", "--length", "6", "--m-bound", "5",
              "--degrees", "-2", "2", "--output", str(tmp_path / target)])
    name = "leavitt-k_x_x_2_.json"
    assert sorted(os.listdir(tmp_path / "first")) == [name]
    assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_certificate_replays_and_detects_corruption(tmp_path):
    out = tmp_path / "out"
    main(["certify-vp", "--corpus", "two_loop", "--module", "top", "--d", "1", "--cutoff", "6",
          "--output", str(out)])
    path = out / "certify-vp-two-loop-top.json"
    report = _load(path)
    assert report["result"]["outcome"] == "VPCertificate"

    main(["verify", "--input", str(path), "--output", str(out)])
    replay = _load(out / "verify-certify-vp-two-loop-top.json")
    assert replay["result"] == {"replayed": "certify-vp", "verified": True, "failures": []}

    nodes = report["result"]["closure"]["nodes"]
    node = next(node for node in nodes if node["kind"] == "add")
    node["maps"][0][0][0] = (node["maps"][0][0][0] + 1) % 3
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(report), encoding="utf-8")
    assert _exit_code(["verify", "--input", str(broken), "--output", str(out)]) == EXIT_VERIFICATION_FAILED


def test_rejected_finite_pd_is_reported(tmp_path):
    main(["certify-vp", "--corpus", "a2", "--module", "simple:1", "--output", str(tmp_path)])
    report = _load(tmp_path / "certify-vp-A2-simple_1.json")
    assert report["result"]["outcome"] == "RejectFinitePd"
    assert report["result"]["pd"]["degree"] == 1


def test_malformed_document_exits_with_input_error(tmp_path):
    document = tmp_path / "broken.json"
    document.write_text("{\"algebra\": ", encoding="utf-8")
    assert _exit_code(["analyze", "--input", str(document)]) == EXIT_INPUT_ERROR


def test_missing_document_exits_with_input_error(tmp_path):
    assert _exit_code(["analyze", "--input", str(tmp_path / "absent.json")]) == EXIT_INPUT_ERROR


def test_non_admissible_relation_exits_with_input_error(tmp_path):
    document = dict(DUAL_NUMBERS_DOCUMENT, algebra=dict(DUAL_NUMBERS_DOCUMENT["algebra"], relations=[[[1, "x"]]]))
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    assert _exit_code(["analyze", "--input", str(path)]) == EXIT_INPUT_ERROR


def test_unknown_module_exits_with_input_error():
    assert _exit_code(["gamma", "--corpus", "a2", "--module", "simple:9"]) == EXIT_INPUT_ERROR
    assert _exit_code(["gamma", "--corpus", "a2", "--module", "nowhere"]) == EXIT_INPUT_ERROR


def test_bad_arguments_exit_with_input_error(tmp_path):
    assert _exit_code(["analyze", "-c", str(tmp_path / "missing.ini")]) == EXIT_INPUT_ERROR
    assert _exit_code(["certify-vp", "--d", "0"]) == EXIT_INPUT_ERROR
    assert _exit_code(["analyze", "-o", "NOWHERE", "NAME", "a2"]) == EXIT_INPUT_ERROR
    assert _exit_code(["analyze", "-o", "DEFAULT", "DATA_SOURCE", "Database"]) == EXIT_INPUT_ERROR
    assert _exit_code(["analyze", "--corpus", "no_such_algebra"]) == EXIT_INPUT_ERROR


def test_verify_needs_a_report(tmp_path):
    document = tmp_path / "dual.json"
    document.write_text(json.dumps(DUAL_NUMBERS_DOCUMENT), encoding="utf-8")
    assert _exit_code(["verify", "--input", str(document)]) == EXIT_INPUT_ERROR


def test_output_directory_from_environment(monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_VARIABLE, "elsewhere")
    args = build_parser().parse_args(["analyze", "-o", "DEFAULT", "WRITER_ENGINE", "JSONOutput"])
    config = read_config(args)
    assert config["JSONOutput"]["OUTPUT_DIR"] == "elsewhere"
    assert config["DEFAULT"]["WRITER_ENGINE"] == "JSONOutput"


def test_config_file_sets_corpus(tmp_path):
    config = tmp_path / "custom.ini"
    config.write_text("[DEFAULT]\nDATA_SOURCE = Corpus\nWRITER_ENGINE = JSONOutput\n"
                      f"[Corpus]\nNAME = a2\n[JSONOutput]\nOUTPUT_DIR = {tmp_path / 'configured'}\n",
                      encoding="utf-8")
    main(["analyze", "-c", str(config)])
    assert os.path.exists(tmp_path / "configured" / "analyze-A2.json")


def test_gamma_of_finite_pd_simple_is_zero(tmp_path):
    main(["gamma", "--corpus", "a2", "--module", "simple:1", "--output", str(tmp_path)])
    report = _load(tmp_path / "gamma-A2-simple_1.json")
    entries = report["result"]["table"]["entries"]
    assert [entry["n"] for entry in entries] == list(range(-5, 6))
    assert {entry["status"] for entry in entries} == {"ZeroCertified"}
    assert not report["result"]["virtually_periodic"]


def test_crosscheck_reports_matches(tmp_path):
    main(["crosscheck", "--corpus", "a2", "--range", "3", "--output", str(tmp_path)])
    report = _load(tmp_path / "crosscheck-A2.json")
    crosscheck = report["result"]["crosscheck"]
    assert crosscheck["matched"]
    assert [entry["degree"] for entry in crosscheck["entries"]] == list(range(-3, 4))
    assert {entry["comparison"] for entry in crosscheck["entries"]} == {"Match"}

    main(["crosscheck", "--corpus", "truncated_polynomial:2", "--range", "3", "--cutoff", "8",
          "--output", str(tmp_path / "dual")])
    report = _load(tmp_path / "dual" / "crosscheck-k_x_x_2_.json")
    assert [entry["gamma_dim"] for entry in report["result"]["crosscheck"]["entries"]] == [1] * 7


def test_presilting_command(tmp_path):
    main(["presilting", "--corpus", "truncated_polynomial:2", "--range", "3", "--cutoff", "8",
          "--output", str(tmp_path)])
    report = _load(tmp_path / "presilting-k_x_x_2_-top.json")
    assert report["result"]["outcome"] == "NonvanishingWitness"
    assert report["result"]["n"] == 1

    main(["presilting", "--corpus", "a2", "--module", "simple:1", "--output", str(tmp_path)])
    report = _load(tmp_path / "presilting-A2-simple_1.json")
    assert report["result"] == {"outcome": "ZeroObject", "degree": 1}


def test_probes_command(tmp_path):
    main(["probes", "--corpus", "truncated_polynomial:3", "--dmax", "3", "--output", str(tmp_path)])
    result = _load(tmp_path / "probes-k_x_x_3_-top.json")["result"]
    assert result["periodicity"]["outcome"] == "Periodic"
    assert result["periodicity"]["period"] == 2
    assert result["ultimately_closed"]["outcome"] == "UCWitness"
    assert result["ultimately_closed"]["d"] == 2
    assert result["syzygy_finite"]["outcome"] == "SyzygyInventory"


def test_unexpected_computation_error_exits_with_invariant_breach(monkeypatch):
    def broken(workload, run):
        raise ValueError("cannot reshape array of size 0")

    monkeypatch.setitem(COMMANDS, "analyze", broken)
    assert _exit_code(["analyze", "--corpus", "a2"]) == EXIT_INVARIANT_BREACH
