import numpy as np
import pytest

from paraplex.errors import UnknownSuite
from paraplex.report import REPORT_SCHEMA
from paraplex.suites import SUITE_NAMES, run_suite


def test_unknown_suite_raises():
    with pytest.raises(UnknownSuite):
        run_suite("bogus")


def test_suite_names_cover_modules():
    assert set(SUITE_NAMES) >= {"linespace", "geodesic-spaces", "products", "planefields", "pde", "topology"}


def test_reports_deterministic_for_seed():
    a = run_suite("products", seed=3)
    b = run_suite("products", seed=3)
    da, db = a.as_dict(), b.as_dict()
    da.pop("wall_time_s")
    db.pop("wall_time_s")
    assert da == db


def test_report_counts_consistent():
    rep = run_suite("planefields", seed=5)
    d = rep.as_dict()
    assert d["passed"] + d["failed"] == len(d["checks"])
    for c in d["checks"]:
        assert c["pass"] == (c["residual"] <= c["tolerance"])


def test_tolerance_scale_recorded_and_applied():
    rep = run_suite("pde", seed=1, tolerance_scale=10.0)
    d = rep.as_dict()
    assert d["tolerance_scale"] == 10.0


def test_report_json_17_digits():
    rep = run_suite("products", seed=2)
    text = rep.to_json()
    import json

    parsed = json.loads(text)
    # every float survives the round trip exactly
    for c, c2 in zip(sorted(rep.checks, key=lambda c: c.id), parsed["checks"]):
        assert float(c2["residual"]) == float(c.residual)


def test_report_validates_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import json

    rep = run_suite("products", seed=2)
    jsonschema.validate(json.loads(rep.to_json()), REPORT_SCHEMA)
