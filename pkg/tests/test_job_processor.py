import json
from pathlib import Path

import pytest

from src.config import EngineConfig
from src.exporters.report_exporter import ReportExporter, canonical_json, report_digest
from src.processors.job_processor import (
    TASKS,
    JobSchemaError,
    Report,
    check_expectation,
    load_document,
    parse_document,
    run_job,
)

QUADRIC_RING = {
    "variables": ["x", "y", "z", "u", "v"],
    "relations": ["x*v + y*u + z*(z - 1)"],
}


@pytest.fixture
def config():
    return EngineConfig()


def _run(data, config):
    return run_job(parse_document(data, "doc.json", config), config)


def test_cocycle_check_document(config):
    report = _run(
        {
            "task": "cocycle-check",
            "tag": "quádrica",
            "ring": QUADRIC_RING,
            "cocycle": {
                "generators": ["x", "y", "z"],
                "numerators": {"1,2": "z - 1", "1,3": "-u", "2,3": "v"},
            },
        },
        config,
    )
    assert report.verdict == "true"
    assert report.document == "doc.json"
    assert report.ring == "QQ[x, y, z, u, v]/(z^2 + y*u + x*v - z)"
    assert report.passed is None


def test_member_document_with_witness(config):
    report = _run(
        {
            "task": "member",
            "ring": {"variables": ["x", "y"], "relations": ["x^2 + y^2 - 1"]},
            "ideal": ["x - 1"],
            "element": "y^2",
        },
        config,
    )
    assert report.verdict == "true"
    assert report.details["remainder"] == "0"
    assert len(report.witnesses["coefficients"]) == 1


def test_member_document_without_membership(config):
    report = _run(
        {
            "task": "member",
            "ring": {"variables": ["X", "Y", "Z"], "relations": ["X^2 + Y^3 + Z^5"]},
            "ideal": ["Y", "Z"],
            "element": "X",
        },
        config,
    )
    assert report.verdict == "false"
    assert report.details["remainder"] == "X"
    assert "coefficients" not in report.witnesses


def test_gb_document(config):
    report = _run(
        {"task": "gb", "ring": {"variables": ["x", "y"]}, "ideal": ["x + y", "x - y"]},
        config,
    )
    assert report.verdict == "proper"
    assert report.details["basis"] == ["x", "y"]


def test_fiber_document_over_f5(config):
    report = _run(
        {
            "task": "fiber",
            "ring": {"variables": ["x", "y"], "characteristic": 5},
            "forcing": {"generators": ["x", "y"], "f": "-1"},
            "points": [[1, 0], [0, 0]],
        },
        config,
    )
    assert report.verdict == "mixed"
    assert report.details["dimensions"] == [1, None]


def test_classify_adds_field_caveat(config):
    report = _run(
        {
            "task": "classify",
            "ring": {"variables": ["x", "y"]},
            "forcing": {"generators": ["x", "y"], "f": "x"},
            "point": [0, 0, -1, 0],
        },
        config,
    )
    assert report.verdict == "singular"
    (entry,) = report.details["classifications"]
    assert entry["case"] == "case4-singular"
    assert entry["case4_solvable"] is True
    assert report.details["case4_note"].startswith("Lado direito")
    assert any("algebricamente fechado" in w for w in report.warnings)


def test_classify_reports_empty_fiber_from_base_point(config):
    report = _run(
        {
            "task": "classify",
            "ring": {"variables": ["x", "y"]},
            "forcing": {"generators": ["x", "y"], "f": "1"},
            "points": [[0, 0], [1, 0, -1, 0]],
        },
        config,
    )
    assert report.verdict == "mixed"
    cases = [entry["case"] for entry in report.details["classifications"]]
    assert cases == ["case2-empty", "case1-smooth"]


def test_derivation_document(config):
    report = _run(
        {
            "task": "derivation",
            "ring": {"variables": ["x", "y"]},
            "forcing": {"generators": ["x", "y"], "f": "1"},
            "elements": ["T1^3"],
        },
        config,
    )
    assert report.verdict == "true"
    assert report.details["images"] == {"T1": "y", "T2": "-x"}
    assert report.details["nilpotency"] == {"T1^3": 4}


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"tag": "sem tarefa"},
        {"task": "nope"},
        {"task": "gb", "ideal": ["x"]},
        {"task": "gb", "ring": {"variables": ["x"]}},
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": ["x"], "extra": 1},
        {"task": "gb", "ring": {"variables": ["x"], "weird": 1}, "ideal": ["x"]},
        {"task": "gb", "ring": {"variables": ["x"], "characteristic": 4}, "ideal": ["x"]},
        {"task": "gb", "ring": {"variables": ["x"], "order": "foo"}, "ideal": ["x"]},
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": ["x"], "expect": {"foo": 1}},
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": ["x"], "tag": 3},
    ],
)
def test_schema_errors(config, data):
    with pytest.raises(JobSchemaError):
        parse_document(data, config=config)


@pytest.mark.parametrize(
    "data",
    [
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": "x"},
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": ["x + w"]},
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": ["x +"]},
        {
            "task": "cech-to-forcing",
            "ring": {"variables": ["x", "y"]},
            "cocycle": {"generators": ["x", "y"], "numerators": {"1;2": "1"}},
        },
        {
            "task": "fiber",
            "ring": {"variables": ["x", "y"]},
            "forcing": {"generators": ["x", "y"], "f": "1"},
            "point": [1],
        },
        {
            "task": "classify",
            "ring": {"variables": ["x", "y"]},
            "forcing": {"generators": ["x", "y"], "f": "1"},
            "point": [0, 0, 0, 0],
        },
        {
            "task": "fiber",
            "ring": {"variables": ["x", "y"]},
            "forcing": {"generators": ["x"], "matrix": [["x"]], "vector": ["1"]},
            "point": [1, 1],
        },
    ],
)
def test_data_errors_become_schema_errors(config, data):
    with pytest.raises(JobSchemaError):
        _run(data, config)


def test_characteristic_override(config):
    doc = parse_document(
        {"task": "gb", "ring": {"variables": ["x"]}, "ideal": ["2*x"]},
        config=config,
        characteristic=2,
    )
    assert doc.ring.field.characteristic == 2
    assert run_job(doc, config).verdict == "zero"


def test_load_document_errors(tmp_path, config):
    with pytest.raises(JobSchemaError):
        load_document(str(tmp_path / "missing.json"), config)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(JobSchemaError):
        load_document(str(broken), config)


def test_reports_are_deterministic(tmp_path, config):
    data = {
        "task": "coboundary",
        "ring": QUADRIC_RING,
        "cocycle": {
            "generators": ["x", "y", "z"],
            "numerators": {"1,2": "y*u - x*v", "1,3": "z*u - x", "2,3": "z*v - y"},
        },
    }
    path = tmp_path / "cobordo.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    first = run_job(load_document(str(path), config), config)
    second = run_job(load_document(str(path), config), config)
    assert first.verdict == "true"
    assert canonical_json(first.to_machine()) == canonical_json(second.to_machine())
    assert report_digest(first) == report_digest(second)

    exporter = ReportExporter(str(tmp_path / "exports"))
    target = exporter.export_json(first, str(tmp_path / "out.json"))
    assert json.loads(Path(target).read_text(encoding="utf-8"))["verdict"] == "true"


def test_check_expectation():
    report = Report(
        task="fiber", document="d.json", tag="", verdict="Affine",
        details={"dimensions": [2, 1], "fibers": []},
    )
    assert check_expectation(report, {"verdict": "Affine", "details": {"dimensions": [2, 1]}}) == []
    problems = check_expectation(
        report, {"verdict": "Empty", "details": {"dimensions": [1], "missing": 0}}
    )
    assert len(problems) == 3


def test_expectation_sets_passed_flag(config):
    doc = parse_document(
        {
            "task": "radical",
            "ring": {"variables": ["x", "y"]},
            "ideal": ["x^2", "y^3"],
            "element": "x + y",
            "expect": {"verdict": "true"},
        },
        config=config,
    )
    report = run_job(doc, config)
    assert report.passed is True
    assert report.to_machine()["problems"] == []
    assert "duration_ms" not in report.to_machine()


def test_every_task_is_registered():
    assert set(TASKS) == {
        "gb", "member", "radical", "fiber", "section", "cocycle-check",
        "cech-to-forcing", "coboundary", "localize", "jacobian", "classify",
        "locus", "frobenius", "degree", "derivation",
    }
