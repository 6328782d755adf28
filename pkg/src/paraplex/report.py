"""Verification reports: named checks with residuals, tolerances and pass
flags, serialized as reproducible JSON (17-significant-digit decimals, sorted
checks, wall time isolated in a single field)."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

ENGINE_VERSION = "0.1.0"
SCHEMA_VERSION = "paraplex-report/1"

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": [
        "schema",
        "engine_version",
        "suite",
        "seed",
        "tolerance_scale",
        "checks",
        "passed",
        "failed",
        "wall_time_s",
    ],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "engine_version": {"type": "string"},
        "suite": {"type": "string"},
        "seed": {"type": "integer"},
        "tolerance_scale": {"type": "number"},
        "passed": {"type": "integer"},
        "failed": {"type": "integer"},
        "wall_time_s": {"type": "number"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "description", "claim", "residual", "tolerance", "pass"],
                "additionalProperties": True,
                "properties": {
                    "id": {"type": "string"},
                    "description": {"type": "string"},
                    "claim": {"type": "string"},
                    "residual": {"type": ["number", "string"]},
                    "tolerance": {"type": "number"},
                    "pass": {"type": "boolean"},
                },
            },
        },
    },
}


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    claim: str
    residual: float
    tolerance: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self) -> dict:
        d = {
            "id": self.id,
            "description": self.description,
            "claim": self.claim,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.extra:
            d["extra"] = self.extra
        return d


@dataclass
class VerificationReport:
    suite: str
    seed: int
    tolerance_scale: float
    checks: list
    wall_time_s: float

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        ordered = sorted(self.checks, key=lambda c: c.id)
        return {
            "schema": SCHEMA_VERSION,
            "engine_version": ENGINE_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "tolerance_scale": self.tolerance_scale,
            "passed": sum(1 for c in ordered if c.passed),
            "failed": sum(1 for c in ordered if not c.passed),
            "checks": [c.as_dict() for c in ordered],
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return dumps_17(self.as_dict())


def dumps_17(obj) -> str:
    """JSON with floats printed as 17-significant-digit decimals."""

    class F(float):
        def __repr__(self):
            return format(float(self), ".17g")

    def wrap(o):
        if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
            return o
        if isinstance(o, float):
            return F(o)
        if isinstance(o, dict):
            return {k: wrap(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [wrap(v) for v in o]
        try:
            import numpy as np

            if isinstance(o, np.floating):
                return F(float(o))
            if isinstance(o, np.integer):
                return int(o)
            if isinstance(o, np.bool_):
                return bool(o)
            if isinstance(o, np.ndarray):
                return [wrap(v) for v in o.tolist()]
        except ImportError:
            pass
        raise TypeError(f"not JSON-serializable: {o!r}")

    return json.dumps(wrap(obj), indent=2)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False
