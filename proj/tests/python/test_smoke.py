import json
import os
import pathlib

import algd


def spec_path(name: str) -> pathlib.Path:
    root = os.environ.get("ALGD_SPECS")
    assert root, "ALGD_SPECS must point at the bundled spec documents"
    return pathlib.Path(root) / name


def test_exact_linear_algebra():
    rref, pivots = algd.rref([["1", "2"], ["2", "1"]], prime=3)
    assert rref == [["1", "2"], ["0", "0"]]
    assert pivots == [0]

    x = algd.solve([["2"]], ["1"])
    assert x == ["1/2"]
    assert algd.solve([["0", "0"], ["0", "0"]], ["1", "0"]) is None

    ker = algd.kernel([["1", "1"]])
    # one basis row spanning {(t, -t)}
    assert len(ker) == 1
    a, b = ker[0]
    assert a == "1" and b == "-1" or a == "-1" and b == "1"


def test_weyl_spec_passes_and_is_deterministic():
    text = spec_path("weyl_z2_f3.json").read_text()
    report1, ok1 = algd.run_spec(text)
    report2, ok2 = algd.run_spec(text)
    assert ok1 and ok2
    assert report1 == report2  # byte-identical canonical reports
    doc = json.loads(report1)
    assert doc["all_passed"] is True
    counts = {
        (t["kind"], t["count"]) for t in doc["tasks"] if t["op"] == "enumerate"
    }
    assert ("bisection-left", 2) in counts
    assert ("bisection-right", 2) in counts
    text_report = algd.report_text(report1)
    assert "PASS" in text_report and "FAIL" not in text_report


def test_failing_spec_reports_failure():
    spec = {
        "field": {"prime": 3},
        "objects": [
            {"name": "Z2", "type": "group", "table": [[0, 1], [1, 0]]},
            {"name": "H", "type": "group_algebra", "group": "Z2"},
            {"name": "W", "type": "weyl", "hopf": "H"},
        ],
        "tasks": [
            {"op": "enumerate", "target": "W", "kind": "bisection-right", "expect": 3}
        ],
    }
    report, ok = algd.run_spec(json.dumps(spec))
    assert not ok
    doc = json.loads(report)
    assert doc["tasks"][0]["status"] == "fail"


def test_bad_reference_is_an_error_not_a_crash():
    spec = {
        "field": {"prime": 3},
        "objects": [{"name": "W", "type": "weyl", "hopf": "missing"}],
        "tasks": [],
    }
    report, ok = algd.run_spec(json.dumps(spec))
    assert not ok
    doc = json.loads(report)
    assert doc["objects"][0]["status"] == "error"
