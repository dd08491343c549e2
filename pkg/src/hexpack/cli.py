"""Command line front end.

Exit codes: 0 success, 1 invalid input, 2 a verification step failed,
3 the search ran out of budget (best-so-far is still written).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import bodies
from .bounds import (
    SMITH_CONSTANT,
    bound3,
    lemma1_certificate,
    theorem1_chain,
    universal_constant,
    volume_chain_audit,
)
from .errors import GeometryError, InvalidInputs, SearchBudgetExceeded
from .lattice import CSHexagon, SearchConfig, grid_hexagon_oracle, min_circumscribed_hexagon
from .mixed import mixed_area, mixed_area_oracle

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3
SWEEP_HEADER = ["family", "parameter", "delta_C", "bound", "runtime_ms"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _kv(fields: dict, as_json: bool) -> str:
    if as_json:
        return bodies.dumps(fields)
    return "".join(f"{k}={v}\n" for k, v in fields.items())


def _config(args, **overrides) -> SearchConfig:
    kw = {"grid_steps": args.grid_steps}
    if getattr(args, "refine_sweeps", None) is not None:
        kw["refine_sweeps"] = args.refine_sweeps
    kw.update(overrides)
    return SearchConfig(**kw)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HEXPACK_THREADS", "1")))
    except ValueError:
        return 1


def task_rng(seed: int, index: int) -> np.random.Generator:
    """Per-task generator derived from the master seed and the task index."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


# -- commands ----------------------------------------------------------------

def cmd_constant(args) -> int:
    fmt = f"{{:.{args.digits}f}}"
    bound = universal_constant()
    fields = {
        "paper_bound": fmt.format(bound),
        "smith_bound": fmt.format(SMITH_CONSTANT),
        "improvement": fmt.format(bound - SMITH_CONSTANT),
    }
    if args.json:
        fields = {k: float(v) for k, v in fields.items()}
    _emit(_kv(fields, args.json), args.out)
    return EXIT_OK


def cmd_area(args) -> int:
    P = bodies.load_polygon(args.body, tol=args.tol)
    _emit(_kv({"area": P.area, "vertices": len(P)}, args.json), args.out)
    return EXIT_OK


def cmd_mixed_area(args) -> int:
    K = bodies.load_polygon(args.body, tol=args.tol)
    L = bodies.load_polygon(args.other, tol=args.tol)
    fields = {"surface_formula": mixed_area(K, L).value,
              "minkowski_oracle": mixed_area_oracle(K, L).value}
    _emit(_kv(fields, args.json), args.out)
    return EXIT_OK


def cmd_delta2(args) -> int:
    C = bodies.load_polygon(args.body, tol=args.tol)
    code = EXIT_OK
    try:
        est = min_circumscribed_hexagon(C, _config(args, raise_on_budget=True))
    except SearchBudgetExceeded as exc:
        est, code = exc.estimate, EXIT_BUDGET
        print(f"warning: {exc}", file=sys.stderr)
    _emit(bodies.dumps(est.to_dict()), args.out)
    return code


def cmd_minhex_oracle(args) -> int:
    C = bodies.load_polygon(args.body, tol=args.tol)
    area, angles = grid_hexagon_oracle(C, args.resolution)
    fields = {"area": area, "lower_bound": C.area / area, "angles": list(angles)}
    if not args.json:
        fields["angles"] = ",".join(repr(a) for a in angles)
    _emit(_kv(fields, args.json), args.out)
    return EXIT_OK


def cmd_lemma1(args) -> int:
    C = bodies.load_polygon(args.body, tol=args.tol)
    H = CSHexagon.from_polygon(bodies.load_polygon(args.hexagon, tol=args.tol))
    cert = lemma1_certificate(C, H, _config(args), delta_C=args.delta)
    _emit(bodies.dumps(cert.to_dict()), args.out)
    return EXIT_OK if cert.passed else EXIT_VERIFY


def cmd_bound3(args) -> int:
    K = bodies.load_polytope(args.polytope)
    report = bound3(K, _config(args))
    doc = report.to_dict()
    audit = volume_chain_audit(report, n_random=0)
    doc["audit"] = [r.to_dict() for r in audit]
    _emit(bodies.dumps(doc), args.out)
    ok = doc["pass"] and all(r.passed for r in audit)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gen(args) -> int:
    doc = bodies.gen_body(args.kind, args.seed, args.size)
    _emit(bodies.dumps(doc), args.out)
    return EXIT_OK


def _parse_param(text: str) -> float:
    return math.inf if text.strip().lower() in ("inf", "infinity") else float(text)


def sweep_parameters(args) -> list[float]:
    if args.values is not None:
        vals = [_parse_param(v) for v in args.values.split(",") if v.strip()]
    else:
        if args.num < 0 or (args.num > 0 and args.stop < args.start):
            raise ValueError("bad sweep range")
        vals = list(np.linspace(args.start, args.stop, args.num)) if args.num else []
    return sorted(vals)


def sweep_row(family: str, param: float, seed: int, size: int,
              mode: str, cfg: SearchConfig) -> list:
    t0 = time.perf_counter()
    if family == "pball" and mode == "3d":
        report = bound3(bodies.pball_polytope(param, size), cfg)
        delta, bound = report.density.lower_bound, report.bound
    else:
        if family == "pball":
            C = bodies.pball_polygon(param, size)
        elif family == "random":
            C = bodies.random_cs_polygon(task_rng(seed, int(param)), size)
        elif family == "zonogon":
            C = bodies.random_zonogon(task_rng(seed, int(param)), int(param))
        else:
            raise ValueError(f"unknown family {family!r}")
        delta = min_circumscribed_hexagon(C, cfg).lower_bound
        bound = theorem1_chain(delta, 1.0 / math.sqrt(delta), 1.0)
    ms = (time.perf_counter() - t0) * 1e3
    return [family, param, delta, bound, ms]


def cmd_sweep(args) -> int:
    params = sweep_parameters(args)
    if args.family == "zonogon" and any(p < 2 or p != int(p) for p in params):
        raise ValueError("zonogon parameter is an integer generator count >= 2")
    if args.family == "pball" and any(p < 1 for p in params):
        raise ValueError("p-ball parameter must be >= 1")
    cfg = _config(args)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(
            lambda p: sweep_row(args.family, p, args.seed, args.size, args.mode, cfg), params))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for fam, p, delta, bound, ms in rows:
        w.writerow([fam, repr(float(p)), f"{delta:.9f}", f"{bound:.9f}", f"{ms:.3f}"])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9, help="geometric tolerance")
    common.add_argument("--grid-steps", type=int, default=48)
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = _Parser(prog="hexpack", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constant", parents=[common], help="print the universal bounds")
    c.add_argument("--digits", type=int, default=6)
    c.set_defaults(func=cmd_constant)

    c = sub.add_parser("area", parents=[common], help="area of a polygon body file")
    c.add_argument("body")
    c.set_defaults(func=cmd_area)

    c = sub.add_parser("mixed-area", parents=[common], help="mixed area by both methods")
    c.add_argument("body")
    c.add_argument("other")
    c.set_defaults(func=cmd_mixed_area)

    c = sub.add_parser("delta2", parents=[common], help="lattice packing density lower bound")
    c.add_argument("body")
    c.add_argument("--refine-sweeps", type=int, default=None)
    c.set_defaults(func=cmd_delta2)

    c = sub.add_parser("minhex-oracle", parents=[common], help="exhaustive grid hexagon search")
    c.add_argument("body")
    c.add_argument("--resolution", type=int, default=180)
    c.set_defaults(func=cmd_minhex_oracle)

    c = sub.add_parser("lemma1", parents=[common], help="mixed-area certificate for C and H")
    c.add_argument("body")
    c.add_argument("hexagon")
    c.add_argument("--delta", type=float, default=None,
                   help="use this lower bound for delta_L(C) instead of searching")
    c.add_argument("--refine-sweeps", type=int, default=None)
    c.set_defaults(func=cmd_lemma1)

    c = sub.add_parser("bound3", parents=[common], help="3D bound from the central section")
    c.add_argument("polytope")
    c.add_argument("--refine-sweeps", type=int, default=None)
    c.set_defaults(func=cmd_bound3)

    c = sub.add_parser("gen", parents=[common], help="seeded random body file")
    c.add_argument("kind", choices=["cs_polygon", "cs_hexagon", "cs_polytope"])
    c.add_argument("--size", type=int, default=16)
    c.set_defaults(func=cmd_gen)

    c = sub.add_parser("sweep", parents=[common], help="bound across a body family, as CSV")
    c.add_argument("family", choices=["pball", "random", "zonogon"])
    c.add_argument("--values", default=None, help="comma-separated parameters (inf allowed)")
    c.add_argument("--start", type=float, default=0.0)
    c.add_argument("--stop", type=float, default=0.0)
    c.add_argument("--num", type=int, default=0)
    c.add_argument("--size", type=int, default=256, help="vertex sample size")
    c.add_argument("--mode", choices=["2d", "3d"], default="2d")
    c.add_argument("--refine-sweeps", type=int, default=None)
    c.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GeometryError, InvalidInputs, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
