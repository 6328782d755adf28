"""Command-line interface.

    paraplex verify --suite <name> [--seed N] [--out report.json]
                    [--tolerance-scale S] [--grid-n N]
    paraplex convert --kind <k> --in payload.json [--out out.json]
    paraplex curvature --geometry <name|config.json> --point "a,b,c,d"

Exit codes: 0 all checks pass, 1 any check or data-domain failure, 2 usage,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import linespace as LS
from .config import builtin_geometry, parse_geometry_config
from .errors import ConfigError, GeometryError, UnknownSuite
from .report import dumps_17
from .suites import SUITE_NAMES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _write_out(payload: str, path: str | None) -> int:
    if path is None:
        print(payload)
        return EXIT_OK
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        report = run_suite(args.suite, seed=args.seed, tolerance_scale=args.tolerance_scale, grid_n=args.grid_n)
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = report.to_json()
    rc = _write_out(payload, args.out)
    if rc != EXIT_OK:
        return rc
    summary = report.as_dict()
    print(
        f"suite={report.suite} passed={summary['passed']} failed={summary['failed']} "
        f"wall={report.wall_time_s:.2f}s",
        file=sys.stderr,
    )
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise IOError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc


def _cmd_convert(args) -> int:
    try:
        payload = _load_json(args.infile)
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        out = _convert(args.kind, payload)
    except GeometryError as exc:
        print(dumps_17({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_FAIL
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: bad payload for kind {args.kind!r}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return _write_out(dumps_17(out), args.out)


def _convert(kind: str, payload: dict) -> dict:
    if kind == "xi-eta-to-conformal":
        line = LS.LinePoint(complex(*payload["xi"]), complex(*payload["eta"]))
        cp = LS.to_conformal(line)
        back = LS.from_conformal(cp)
        resid = max(abs(back.xi - line.xi), abs(back.eta - line.eta))
        return {
            "Z1": [cp.Z1.real, cp.Z1.imag],
            "Z2": [cp.Z2.real, cp.Z2.imag],
            "roundtrip_residual": resid,
        }
    if kind == "conformal-to-xi-eta":
        cp = LS.ConformalPoint(complex(*payload["Z1"]), complex(*payload["Z2"]))
        line = LS.from_conformal(cp)
        back = LS.to_conformal(line)
        resid = max(abs(back.Z1 - cp.Z1), abs(back.Z2 - cp.Z2))
        return {
            "xi": [line.xi.real, line.xi.imag],
            "eta": [line.eta.real, line.eta.imag],
            "roundtrip_residual": resid,
        }
    if kind == "points-to-pluecker":
        px = LS.pluecker(np.asarray(payload["s"], dtype=float), np.asarray(payload["t"], dtype=float))
        return {"p": px.p.tolist(), "q": px.q.tolist(), "p_dot_q": float(px.p @ px.q)}
    if kind == "pluecker-to-conformal":
        px = LS.PlueckerSextet(np.asarray(payload["p"], dtype=float), np.asarray(payload["q"], dtype=float))
        X = LS.conformal_from_pluecker(px)
        return {"X": X.tolist(), "Z1": [X[0], X[1]], "Z2": [X[2], X[3]]}
    raise ConfigError(f"unknown conversion kind {kind!r}")


def _cmd_curvature(args) -> int:
    from . import tensor
    from .structures import classify
    from .errors import NotParacomplex

    try:
        point = np.array([float(x) for x in args.point.split(",")], dtype=float)
        if point.shape != (4,):
            raise ValueError("need exactly four coordinates")
    except ValueError as exc:
        print(f"error: bad --point: {exc}", file=sys.stderr)
        return EXIT_USAGE

    structures = {}
    try:
        if args.geometry.endswith(".json"):
            cfg = parse_geometry_config(_load_json(args.geometry))
            metric = cfg.metric
            structures = cfg.structures
        else:
            metric = builtin_geometry(args.geometry)
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    try:
        pack = tensor.curvature(metric, point, need_pm=metric.signature != "lorentz")
    except GeometryError as exc:
        print(dumps_17({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_FAIL
    out = {
        "geometry": metric.name,
        "point": point.tolist(),
        "signature": metric.signature,
        "index_convention": "riemann[i][j][k][l] covariant, pairs (ij)(kl); christoffel[k][i][j] = Gamma^k_ij",
        "scalar": pack.scalar,
        "norms": pack.norms,
        "ricci": pack.ricci.tolist(),
        "einstein": pack.einstein.tolist(),
        "christoffel": pack.christoffel.tolist(),
        "riemann": pack.riemann.tolist(),
        "weyl": pack.weyl.tolist(),
    }
    if structures:
        cls = {}
        for label, j in structures.items():
            try:
                res = classify(metric.value(point), j.value(point))
                cls[label] = {"kind": res.kind, "eigenplanes": res.eigenplane_geometry, "residuals": res.residuals}
            except NotParacomplex as exc:
                cls[label] = {"kind": "not-paracomplex", "message": str(exc)}
        out["structures"] = cls
    return _write_out(dumps_17(out), args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paraplex", description="verification engine for neutral metrics and (para)complex structures")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True, help=f"one of {', '.join(SUITE_NAMES + ('all',))}")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    v.add_argument("--tolerance-scale", type=float, default=1.0, help="multiplies all tolerances (recorded in the report)")
    v.add_argument("--grid-n", type=int, default=64, help="nodes per 1D factor rule in the topology suite")
    v.set_defaults(func=_cmd_verify)

    cv = sub.add_parser("convert", help="coordinate conversions with roundtrip residuals")
    cv.add_argument("--kind", required=True, choices=["xi-eta-to-conformal", "conformal-to-xi-eta", "points-to-pluecker", "pluecker-to-conformal"])
    cv.add_argument("--in", dest="infile", required=True)
    cv.add_argument("--out", default=None)
    cv.set_defaults(func=_cmd_convert)

    cq = sub.add_parser("curvature", help="full curvature package at a chart point")
    cq.add_argument("--geometry", required=True, help="built-in name or a geometry config .json path")
    cq.add_argument("--point", required=True, help="comma-separated chart coordinates a,b,c,d")
    cq.add_argument("--out", default=None)
    cq.set_defaults(func=_cmd_curvature)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
