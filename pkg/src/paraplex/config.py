"""Geometry configuration: JSON-defined charts/metrics via the expression
language, plus the registry of built-in geometries.

Config schema (all unknown keys rejected, everything parsed before any
evaluation):

    {
      "schema": "paraplex-geometry/1",
      "name": "my-geometry",                       # optional
      "chart": {"names": ["Z1", "Z2"]},            # 2 complex or 4 real names
      "signature": "neutral",
      "metric": {"conformal_factor": "<expr>"}     # g = Omega^2 * flat form
              | {"components": [[...4x4 exprs...]]},
      "structures": {"label": [[...4x4 exprs...]], ...},   # optional
      "points": {"explicit": [[x0,x1,x2,x3], ...]}          # optional
              | {"seed": 42, "count": 10, "scale": 0.5}
    }

With a conformal factor, the flat form is diag(+1,+1,-1,-1) for neutral and
the identity for riemannian signature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exprlang
from .errors import ConfigError
from .fields import Chart, MetricField, StructureField

CONFIG_SCHEMA_NAME = "paraplex-geometry/1"

_TOP_KEYS = {"schema", "name", "chart", "signature", "metric", "structures", "points"}
_FLAT = {"riemannian": (1.0, 1.0, 1.0, 1.0), "neutral": (1.0, 1.0, -1.0, -1.0), "lorentz": (-1.0, 1.0, 1.0, 1.0)}


@dataclass(frozen=True)
class GeometryConfig:
    name: str
    metric: MetricField
    structures: dict
    points: np.ndarray


def _reject_unknown(d: dict, allowed: set, where: str):
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def parse_geometry_config(cfg: dict) -> GeometryConfig:
    if not isinstance(cfg, dict):
        raise ConfigError("geometry config must be a JSON object")
    _reject_unknown(cfg, _TOP_KEYS, "config")
    if cfg.get("schema", CONFIG_SCHEMA_NAME) != CONFIG_SCHEMA_NAME:
        raise ConfigError(f"unsupported schema {cfg.get('schema')!r}")
    for key in ("chart", "signature", "metric"):
        if key not in cfg:
            raise ConfigError(f"missing required key {key!r}")

    chart_cfg = cfg["chart"]
    _reject_unknown(chart_cfg, {"names"}, "chart")
    names = tuple(chart_cfg.get("names", ()))
    if len(names) not in (2, 4) or not all(isinstance(n, str) for n in names):
        raise ConfigError("chart.names must list 2 complex or 4 real variable names")

    signature = cfg["signature"]
    if signature not in _FLAT:
        raise ConfigError(f"signature must be one of {sorted(_FLAT)}")

    metric_cfg = cfg["metric"]
    _reject_unknown(metric_cfg, {"conformal_factor", "components"}, "metric")
    name = cfg.get("name", "user-geometry")
    chart = Chart(name, names if len(names) == 4 else (f"Re_{names[0]}", f"Im_{names[0]}", f"Re_{names[1]}", f"Im_{names[1]}"))

    # compile everything before any evaluation
    if "conformal_factor" in metric_cfg:
        omega_prog = exprlang.compile_program(metric_cfg["conformal_factor"], names)
        flat = _FLAT[signature]

        def components(xs):
            om = omega_prog(xs)
            from .jets import ComplexJet

            f = (om.real_part_checked() if isinstance(om, ComplexJet) else om)
            f2 = f * f
            return [[f2 * flat[i] if i == j else 0.0 for j in range(4)] for i in range(4)]

    elif "components" in metric_cfg:
        rows = metric_cfg["components"]
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ConfigError("metric.components must be a 4x4 matrix of expressions")
        progs = [[exprlang.compile_program(str(rows[i][j]), names) for j in range(4)] for i in range(4)]

        def components(xs):
            from .jets import ComplexJet

            out = [[None] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(4):
                    v = progs[i][j](xs)
                    out[i][j] = v.real_part_checked() if isinstance(v, ComplexJet) else v
            return out

    else:
        raise ConfigError("metric needs either conformal_factor or components")

    metric = MetricField(chart, components, signature, name=name)

    structures = {}
    for label, rows in (cfg.get("structures") or {}).items():
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ConfigError(f"structure {label!r} must be a 4x4 matrix of expressions")
        jprogs = [[exprlang.compile_program(str(rows[i][j]), names) for j in range(4)] for i in range(4)]

        def j_components(xs, _p=jprogs):
            from .jets import ComplexJet

            out = [[None] * 4 for _ in range(4)]
            for i in range(4):
                for j in range(4):
                    v = _p[i][j](xs)
                    out[i][j] = v.real_part_checked() if isinstance(v, ComplexJet) else v
            return out

        structures[label] = StructureField(chart, j_components, +1, name=label)

    pts_cfg = cfg.get("points") or {"seed": 0, "count": 5, "scale": 0.5}
    _reject_unknown(pts_cfg, {"explicit", "seed", "count", "scale"}, "points")
    if "explicit" in pts_cfg:
        points = np.asarray(pts_cfg["explicit"], dtype=float).reshape(-1, 4)
    else:
        rng = np.random.default_rng(int(pts_cfg.get("seed", 0)))
        points = rng.uniform(-1.0, 1.0, size=(int(pts_cfg.get("count", 5)), 4)) * float(pts_cfg.get("scale", 0.5))
    return GeometryConfig(name, metric, structures, points)


def builtin_geometry(name: str):
    """Resolve a built-in geometry by name to (MetricField, sample scale)."""
    from . import linespace, products

    registry = {
        "linespace-G": lambda: linespace.metric_G(),
        "linespace-Gtilde": lambda: linespace.metric_G_tilde(),
        "linespace-conformal": lambda: linespace.conformal_metric(),
        "product-s2xs2-plus": lambda: products.build_product(
            products.sphere_factor(1.0), products.sphere_factor(1.0), +1
        ).metric,
        "product-s2xs2-minus": lambda: products.build_product(
            products.sphere_factor(1.0), products.sphere_factor(1.0), -1
        ).metric,
        "flat-neutral": lambda: MetricField(
            Chart("flat-neutral"),
            lambda xs: [[(1.0, 1.0, -1.0, -1.0)[i] if i == j else 0.0 for j in range(4)] for i in range(4)],
            "neutral",
            name="flat-neutral",
        ),
        "flat-euclidean": lambda: MetricField(
            Chart("flat-euclidean"),
            lambda xs: [[1.0 if i == j else 0.0 for j in range(4)] for i in range(4)],
            "riemannian",
            name="flat-euclidean",
        ),
    }
    if name not in registry:
        raise ConfigError(f"unknown geometry {name!r}; built-ins: {sorted(registry)}")
    return registry[name]()
