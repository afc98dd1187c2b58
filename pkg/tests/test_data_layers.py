import json

import pytest

from sg_workbench import corpus
from sg_workbench.algebra.fields import RationalField
from sg_workbench.algebra.modules import modules_equal, simple_modules
from sg_workbench.codec import decode_module, dumps_report, encode_algebra, encode_module, normalize
from sg_workbench.data_collection.loader import Loader
from sg_workbench.data_collection.parsers import DocumentParser, parse_algebra, parse_module
from sg_workbench.data_objects import Limits, RunConfig
from sg_workbench.data_storage.writer import Writer
from sg_workbench.errors import InputError, InvalidDocument

DUAL_NUMBERS = {
    "name": "dual",
    "field": {"type": "prime", "p": 3},
    "vertices": ["1"],
    "arrows": [["x", "1", "1"]],
    "relations": [[[1, "x*x"]]],
    "nilpotency_bound": 2,
}


def test_loader_reads_corpus():
    workload = Loader("Corpus", {"NAME": "cyclic_nakayama:3:2"}).load_data()
    assert workload.algebra.vertex_count == 3
    assert workload.modules == {}
    assert workload.origin == "corpus:cyclic_nakayama:3:2"


def test_loader_over_rationals():
    workload = Loader("Corpus", {"NAME": "a2", "CHARACTERISTIC": "0"}).load_data()
    assert isinstance(workload.algebra.field, RationalField)


def test_loader_rejects_unknown_source():
    with pytest.raises(ValueError):
        Loader("Database", {})


def test_sources_require_their_settings():
    with pytest.raises(KeyError):
        Loader("JSONFile", {})
    with pytest.raises(KeyError):
        Writer("JSONOutput", {})


def test_loader_reads_json_file(tmp_path):
    path = tmp_path / "algebra.json"
    path.write_text(json.dumps({"algebra": DUAL_NUMBERS,
                                "modules": {"k": {"dims": [1], "action": {"x": [[0]]}}}}), encoding="utf-8")
    workload = Loader("JSONFile", {"FILE_PATH": str(path)}).load_data()
    assert workload.algebra.dim == 2
    assert sorted(workload.modules) == ["k"]
    assert workload.document["algebra"]["name"] == "dual"


def test_invalid_json_names_the_position(tmp_path):
    path = tmp_path / "algebra.json"
    path.write_text("{\n  \"algebra\": [1,,]\n}", encoding="utf-8")
    with pytest.raises(InvalidDocument, match=r"algebra\.json:2:"):
        Loader("JSONFile", {"FILE_PATH": str(path)}).load_data()


def test_bare_algebra_document():
    parser = DocumentParser()
    parser.parse(DUAL_NUMBERS)
    algebra, modules = parser.get_results()
    assert algebra.name == "dual"
    assert modules == {}


def test_parser_needs_a_parse():
    with pytest.raises(InvalidDocument):
        DocumentParser().get_results()


def test_module_with_full_action_and_vertex_names():
    algebra = parse_algebra(DUAL_NUMBERS)
    module = parse_module(algebra, {"vertex_of": ["1", "1"], "action": {"e1": [[1, 0], [0, 1]],
                                                                        "x": [[0, 0], [1, 0]]}})
    assert module.dim == 2
    assert not module.is_semisimple()


def test_module_with_wrong_shape_is_rejected():
    algebra = parse_algebra(DUAL_NUMBERS)
    with pytest.raises(InvalidDocument):
        parse_module(algebra, {"dims": [2], "action": {"x": [[0, 0, 0]]}})
    with pytest.raises(InvalidDocument):
        parse_module(algebra, {"dims": [1], "action": {"y": [[0]]}})


def test_corpus_rejects_unknown_names():
    with pytest.raises(InputError):
        corpus.corpus_algebra("tetrahedron")
    with pytest.raises(InputError):
        corpus.corpus_algebra("truncated_polynomial:one")


def test_encoded_algebra_reloads():
    algebra = corpus.commutative_square()
    reloaded = parse_algebra(encode_algebra(algebra))
    assert reloaded.labels == algebra.labels
    assert (reloaded.structure == algebra.structure).all()


def test_encoded_module_decodes_to_equal_module(two_loop):
    _, top = simple_modules(two_loop)
    assert modules_equal(decode_module(two_loop, encode_module(top)), top)


def test_report_serialization_is_sorted():
    text = dumps_report({"b": 1, "a": (2, 3)})
    assert text.index("\"a\"") < text.index("\"b\"")
    assert normalize({"a": (2, 3)}) == {"a": [2, 3]}


def test_writer_saves_json(tmp_path):
    path = Writer("JSONOutput", {"OUTPUT_DIR": str(tmp_path / "reports")}).save(
        {"name": "gamma-k[x]/(x^2)-top", "result": {}})
    assert path.endswith("gamma-k_x_x_2_-top.json")
    with open(path, encoding="utf-8") as report_file:
        assert json.load(report_file)["name"] == "gamma-k[x]/(x^2)-top"


def test_log_output_returns_no_path():
    assert Writer("LogOutput", {}).save({"name": "analyze-A2", "summary": "", "result": {"dim": 3}}) is None


def test_run_config_round_trip_through_report():
    run = RunConfig("gamma", "Corpus", "LogOutput", module="simple:1", period=2, limits=Limits(seed=7))
    rebuilt = RunConfig.from_dict(normalize(run.as_dict()), data_source="JSONFile", writer_engine="LogOutput")
    assert rebuilt.as_dict() == run.as_dict()
    assert rebuilt.seed == 7


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig("gamma", "Corpus", "LogOutput", degrees=(3, 1)).validate()
    with pytest.raises(InputError):
        Limits.from_config({"SYZYGY_CUTOFF": "many"})
    assert Limits.from_config({"SHIFT_RANGE": "2"}).shift_range == 2
