"""Command-line front end.

Exit codes: 0 success, 2 validation/usage error, 1 internal error or failing
verification checks.  With --json the report is a single JSON document with
deterministic key order; floats use the shortest round-trip representation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import cohomology as coh
from . import covering as cov
from . import groupoid as gpd
from . import mackey
from . import spacetime as st
from . import verify
from .errors import ValidationError, WigneroidError


def _parse_metric(text: str) -> st.MetricSpec:
    if text == "minkowski":
        return st.MINKOWSKI
    if text.startswith("schwarzschild:"):
        try:
            mass = float(text.split(":", 1)[1])
        except ValueError as exc:
            raise ValidationError(f"bad mass in metric {text!r}") from exc
        return st.schwarzschild_kruskal(mass)
    raise ValidationError(
        f"unknown metric {text!r}; use minkowski or schwarzschild:M")


def _parse_floats(text: str, n: int, what: str) -> tuple:
    parts = text.split(",")
    if len(parts) != n:
        raise ValidationError(f"{what} needs {n} comma-separated numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"bad number in {what}: {text!r}") from exc


def _default_point(spec: st.MetricSpec) -> st.ChartPoint:
    if spec.kind == st.MINKOWSKI_KIND:
        return st.ChartPoint((0.0, 0.0, 0.0, 0.0))
    return st.ChartPoint((0.0, 1.0, math.pi / 2.0, 0.0))


def _parse_algebra(text: str) -> coh.LieAlgebra:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return coh.LieAlgebra.from_json(json.load(fh))
    return coh.preset_algebra(text)


def _parse_osc(text: str) -> cov.OscElement:
    s, ax, ay, phi = _parse_floats(text, 4, "cover element")
    return cov.OscElement(s, (ax, ay), phi)


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj))
    else:
        print(text)


def _cmd_classify(args) -> int:
    spec = _parse_metric(args.metric)
    p = st.TetradCovector(_parse_floats(args.p, 4, "--p"))
    orbit = gpd.classify_orbit(p, eps=args.tolerance)
    iso = gpd.isotropy_type(orbit)
    poincare = mackey.classify_poincare(p, eps=args.tolerance)
    payload = {
        "metric": spec.to_json(),
        "p": p.to_json(),
        "p_squared": float(st.p_squared(p)),
        "orbit": orbit.to_json(),
        "isotropy": iso.label,
        "poincare": poincare.to_json(),
    }
    mass = "" if orbit.m is None else f" m={orbit.m:g}"
    text = (f"orbit: {orbit.tag}{mass}\n"
            f"p^2: {float(st.p_squared(p)):g}\n"
            f"isotropy: {iso.label}\n"
            f"little group (group side): {poincare.little_group.value}")
    _emit(payload, args.json, text)
    return 0


def _cmd_particle_table(args) -> int:
    spec = _parse_metric(args.metric)
    point = st.ChartPoint(_parse_floats(args.point, 4, "--point")) \
        if args.point else _default_point(spec)
    if not args.p:
        raise ValidationError("provide at least one --p covector")
    samples = [gpd.CotangentPoint(spec, point, st.TetradCovector(
        _parse_floats(p, 4, "--p"))) for p in args.p]
    kwargs = {}
    if args.spin:
        kwargs["spins"] = tuple(Fraction(s) for s in args.spin)
    if args.helicity:
        kwargs["helicities"] = tuple(_parse_helicity(h) for h in args.helicity)
    if args.continuous:
        kwargs["continuous"] = tuple(_parse_floats(c, 2, "--continuous")
                                     for c in args.continuous)
    if args.mu:
        c0s = args.c0 or ["0.0"] * len(args.mu)
        if len(c0s) != len(args.mu):
            raise ValidationError("--c0 must be given once per --mu")
        kwargs["magnetic"] = tuple((float(m), float(c)) for m, c in zip(args.mu, c0s))
    params = mackey.RepParams(**kwargs)
    rows = mackey.particle_table(spec, samples, params)
    payload = {"metric": spec.to_json(), "rows": mackey.table_to_json(rows)}
    _emit(payload, args.json, mackey.table_to_text(rows))
    return 0


def _parse_helicity(text: str):
    value = Fraction(text)
    return value if value.denominator != 1 else int(value)


def _cmd_cohomology(args) -> int:
    algebra = _parse_algebra(args.algebra)
    result = coh.h2(algebra)
    payload = {"algebra": args.algebra, "dim": algebra.dim}
    payload.update(result.to_json(names=algebra.names))
    gens = "; ".join(", ".join(f"{k}={v}" for k, v in g.items())
                     for g in payload["generators"]) or "-"
    text = f"dim H^2 = {result.dim_h2}\ngenerators: {gens}"
    _emit(payload, args.json, text)
    return 0


def _cmd_extend(args) -> int:
    algebra = _parse_algebra(args.algebra)
    result = coh.h2(algebra)
    extension = coh.central_extension(algebra, result.basis)
    payload = {"algebra": args.algebra, "dim_h2": result.dim_h2,
               "extension": extension.to_json()}
    brackets = []
    for i, j, k, v in extension.nonzero_entries():
        brackets.append(f"[{extension.names[i]},{extension.names[j]}] -> "
                        f"{v} {extension.names[k]}")
    text = (f"central extension of dim {algebra.dim} by {result.dim_h2} "
            f"cocycle(s): dim {extension.dim}\n" + "\n".join(brackets))
    _emit(payload, args.json, text)
    return 0


def _cmd_covering(args) -> int:
    ops = [o for o in ("mul", "inv", "project") if getattr(args, o) is not None]
    if len(ops) != 1:
        raise ValidationError("choose exactly one of --mul / --inv / --project")
    op = ops[0]
    if op == "mul":
        g, h = (_parse_osc(t) for t in args.mul)
        result = cov.osc_mul(g, h)
        payload = {"op": "mul", "result": result.to_json()}
        text = f"product: s={result.s:g} a=({result.a[0]:g},{result.a[1]:g}) phi={result.phi:g}"
    elif op == "inv":
        result = cov.osc_inv(_parse_osc(args.inv))
        payload = {"op": "inv", "result": result.to_json()}
        text = f"inverse: s={result.s:g} a=({result.a[0]:g},{result.a[1]:g}) phi={result.phi:g}"
    else:
        result = cov.project(_parse_osc(args.project))
        payload = {"op": "project", "result": result.to_json()}
        text = f"projection: a=({result.a[0]:g},{result.a[1]:g}) theta={result.theta:g}"
    _emit(payload, args.json, text)
    return 0


def _cmd_verify(args) -> int:
    seed = verify.DEFAULT_SEED
    env_seed = os.environ.get("WIGNEROID_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError as exc:
            raise ValidationError("WIGNEROID_SEED must be an integer") from exc
    results = verify.run_suite(args.suite, seed=seed, tol_scale=args.tolerance)
    all_pass = all(r.status == "pass" for r in results)
    payload = {"seed": seed, "all_pass": all_pass,
               "results": [r.to_json() for r in results]}
    lines = [f"{r.status.upper():4s} {r.check}  residual={r.residual:.3e}  "
             f"tolerance={r.tolerance:.3e}" for r in results]
    lines.append(f"{'all checks passed' if all_pass else 'SOME CHECKS FAILED'} "
                 f"({len(results)} checks, seed {seed})")
    _emit(payload, args.json, "\n".join(lines))
    return 0 if all_pass else 1


def _cmd_compare(args) -> int:
    rows = mackey.compare_with_group_classification()
    payload = {"sectors": [r.to_json() for r in rows]}
    _emit(payload, args.json, mackey.comparison_to_text(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wigneroid",
        description="Classify covector orbits, compute E(2) projective covers, "
                    "and run the finite representation witness suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="orbit and isotropy of a tetrad covector")
    p.add_argument("--metric", default="minkowski")
    p.add_argument("--p", required=True, help="covector p0,p1,p2,p3")
    p.add_argument("--tolerance", type=float, default=gpd.ORBIT_EPS,
                   help="relative tolerance for the p^2 = 0 stratum")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("particle-table", help="classified table for sample covectors")
    p.add_argument("--metric", default="minkowski")
    p.add_argument("--point", help="chart point for all samples")
    p.add_argument("--p", action="append", default=[], help="sample covector (repeatable)")
    p.add_argument("--spin", action="append", default=[],
                   help="massive spin label, e.g. 1/2 (repeatable)")
    p.add_argument("--helicity", action="append", default=[],
                   help="massless helicity label (repeatable)")
    p.add_argument("--continuous", action="append", default=[],
                   help="continuous-spin pair rho,phi0 (repeatable)")
    p.add_argument("--mu", action="append", default=[],
                   help="magnetic central parameter (repeatable)")
    p.add_argument("--c0", action="append", default=[],
                   help="spectral shift paired with --mu")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_particle_table)

    p = sub.add_parser("cohomology", help="H^2 of a Lie algebra, exact")
    p.add_argument("--algebra", required=True,
                   help="preset (e2, su2, heisenberg3, abelian:n) or @file.json")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("extend", help="central extension by the H^2 basis")
    p.add_argument("--algebra", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("covering", help="arithmetic in the projective cover of E(2)")
    p.add_argument("--mul", nargs=2, metavar=("G", "H"),
                   help="product of two elements s,ax,ay,phi")
    p.add_argument("--inv", metavar="G", help="inverse of s,ax,ay,phi")
    p.add_argument("--project", metavar="G", help="projection to E(2)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_covering)

    p = sub.add_parser("verify", help="run the numerical witness suite")
    p.add_argument("--suite", action="append",
                   help=f"suite name or 'all' (repeatable); "
                        f"suites: {', '.join(verify.SUITES)}")
    p.add_argument("--tolerance", type=float, default=1.0,
                   help="multiplicative scale applied to every check tolerance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("compare", help="group vs groupoid sector diff")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compare)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    as_json = getattr(args, "json", False)
    try:
        return args.func(args)
    except WigneroidError as exc:
        record = exc.to_json()
        if as_json:
            print(json.dumps({"error": record}))
        else:
            print(f"error[{record['code']}]: {record['message']}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        record = {"code": "internal", "message": f"{type(exc).__name__}: {exc}"}
        if as_json:
            print(json.dumps({"error": record}))
        else:
            print(f"error[internal]: {record['message']}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
