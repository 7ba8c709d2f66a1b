"""Command-line surface: constants, sweeps, verification, extremal bodies,
symmetrization.

Exit codes: 0 success (and every check passed), 1 a verification check
failed, 2 invalid input (ranges, unparseable body, bad kind), 3 unwritable
output path.

Body files are JSON::

    {"type": "polytope", "dim": 3, "vertices": [[x, y, z], ...]}
    {"type": "profile",  "dim": n, "knots": [[t, r], ...]}

Reals are serialized with Python's shortest round-trip representation.
An infinite homothety coefficient (the cone with apex at the bottom) is
encoded as the string "inf" in JSON and as ``inf`` in sweep CSV files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import constants, extremal, measure, verify
from .bodies import (
    AnalyticProfile,
    Body,
    CutSpec,
    Direction,
    NumericProfile,
    Polytope,
    section_ball_volume,
    validate,
)

_EXTREMAL_KINDS = (
    "grunbaum-cone",
    "reflected-cone",
    "double-cone",
    "truncated-cone",
    "lower",
    "upper",
    "t5-cone",
)


# ---------------------------------------------------------------------------
# body (de)serialization


def profile_from_numeric(body: NumericProfile, knot_budget: int = 129) -> AnalyticProfile:
    """Resample a numeric profile onto knots: breakpoints plus a uniform grid.

    Keeping the breakpoints in the knot set reproduces the section areas
    there exactly; the budget controls the density in between.
    """
    lo, hi = body.support
    ts = np.unique(np.concatenate([np.asarray(body.breakpoints), np.linspace(lo, hi, knot_budget)]))
    keep = [ts[0]]
    for t in ts[1:]:
        if t - keep[-1] > 1e-12 * (hi - lo):
            keep.append(t)
    ts = np.asarray(keep)
    omega = section_ball_volume(body.dim)
    rs = (np.maximum(body.area_at(ts), 0.0) / omega) ** (1.0 / (body.dim - 1))
    return AnalyticProfile(body.dim, tuple(zip(ts.tolist(), rs.tolist())))


def body_to_obj(body: Body, knot_budget: int = 129) -> dict:
    if isinstance(body, Polytope):
        return {"type": "polytope", "dim": body.dim, "vertices": [list(v) for v in body.vertices]}
    if isinstance(body, NumericProfile):
        body = profile_from_numeric(body, knot_budget)
    return {"type": "profile", "dim": body.dim, "knots": [[t, r] for t, r in body.knots]}


def body_from_obj(obj: dict) -> Body:
    kind = obj.get("type")
    if kind == "polytope":
        return Polytope(int(obj["dim"]), tuple(tuple(v) for v in obj["vertices"]))
    if kind == "profile":
        return AnalyticProfile(int(obj["dim"]), tuple((t, r) for t, r in obj["knots"]))
    raise ValueError(f"unknown body type {kind!r}")


def load_body(path: str) -> Body:
    with open(path, "r", encoding="utf-8") as fh:
        return body_from_obj(json.load(fh))


def _fmt_lambda(lam: float):
    return "inf" if math.isinf(lam) else lam


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def _write_text(text: str, out_path) -> int:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
        return 0
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        return _fail(f"cannot write {out_path}: {exc}", 3)
    return 0


def _parse_direction(spec: str, dim: int) -> Direction:
    parts = [float(x) for x in spec.split(",")]
    if len(parts) != dim:
        raise ValueError(f"direction has {len(parts)} coordinates, body has {dim}")
    return Direction.from_vector(parts)


# ---------------------------------------------------------------------------
# subcommands


def cmd_constants(args) -> int:
    try:
        triple = constants.bounds(args.alpha, args.n, args.tol)
    except ValueError as exc:
        return _fail(str(exc), 2)
    obj = {
        "n": args.n,
        "alpha": args.alpha,
        "c1": triple.c1,
        "c2": triple.c2.value,
        "c2_argmax_lambda": _fmt_lambda(triple.c2.argmax_lambda),
        "d": triple.d,
        "method": triple.c2.method,
    }
    print(json.dumps(obj))
    return 0


def cmd_sweep(args) -> int:
    if not (-1.0 < args.alpha_min < args.alpha_max < args.n) or args.steps < 1:
        return _fail(
            f"need -1 < alpha-min < alpha-max < n and steps >= 1, got "
            f"[{args.alpha_min}, {args.alpha_max}] with n={args.n}, steps={args.steps}",
            2,
        )
    lines = ["alpha,c1,c2,d,lambda0"]
    for alpha in np.linspace(args.alpha_min, args.alpha_max, args.steps):
        triple = constants.bounds(float(alpha), args.n, args.tol)
        lines.append(
            f"{float(alpha)!r},{triple.c1!r},{triple.c2.value!r},{triple.d!r},"
            f"{_fmt_lambda(triple.c2.argmax_lambda)!s}"
        )
    return _write_text("\n".join(lines) + "\n", args.out)


def cmd_verify(args) -> int:
    try:
        body = load_body(args.body)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(f"cannot parse body file {args.body}: {exc}", 2)
    problems = validate(body)
    if problems:
        for p in problems:
            print(f"invalid body: {p}", file=sys.stderr)
        return 2
    try:
        direction = (
            Direction.axis(body.dim)
            if args.direction is None
            else _parse_direction(args.direction, body.dim)
        )
        cut = CutSpec(direction, args.alpha)
    except ValueError as exc:
        return _fail(str(exc), 2)
    ctx = {"path": args.body}
    reports = [
        verify.check_theorem4(body, cut, tol=args.tol, context=ctx),
        verify.check_theorem5(body, cut, tol=args.tol, context=ctx),
        verify.check_minkowski_radon(body, direction, tol=args.tol, context=ctx),
        verify.check_concavity(body, direction, "A", tol=args.tol, context=ctx),
        verify.check_concavity(body, direction, "V", tol=args.tol, context=ctx),
        verify.check_symmetral_consistency(body, cut, tol=args.tol, context=ctx),
    ]
    if args.alpha == 0.0:
        reports.append(verify.check_grunbaum(body, direction, tol=args.tol, context=ctx))
    if args.mc_samples > 0:
        reports.append(
            verify.check_theorem4(
                body,
                cut,
                tol=args.tol,
                backend=verify.MONTE_CARLO,
                mc_samples=args.mc_samples,
                seed=args.seed,
                context=ctx,
            )
        )
    for rep in reports:
        print(rep.to_json())
    return 0 if all(r.passed for r in reports) else 1


def cmd_extremal(args) -> int:
    try:
        if args.kind == "grunbaum-cone":
            body = extremal.grunbaum_cone(args.n)
        elif args.kind == "reflected-cone":
            body = extremal.reflected_grunbaum_cone(args.n)
        elif args.kind == "double-cone":
            if args.beta is None:
                return _fail("double-cone requires --beta", 2)
            body = extremal.double_cone(args.beta, args.n)
        elif args.kind == "truncated-cone":
            if args.lam is None:
                return _fail("truncated-cone requires --lam", 2)
            body = extremal.truncated_cone(args.lam, args.n)
        elif args.kind == "lower":
            body = extremal.lower_extremizer(args.alpha, args.n)
        elif args.kind == "upper":
            body = extremal.upper_extremizer(args.alpha, args.n, args.tol)
        elif args.kind == "t5-cone":
            if args.alpha > 1.0 / args.n:
                body = extremal.reflected_grunbaum_cone(args.n)
                print(
                    "note: the section bound is 0 for alpha > 1/n and many bodies "
                    "attain it; emitting the cone with empty section there",
                    file=sys.stderr,
                )
            else:
                body = extremal.theorem5_equality_cone(args.alpha, args.n)
        else:
            return _fail(f"unknown kind {args.kind!r}", 2)
    except ValueError as exc:
        return _fail(str(exc), 2)
    return _write_text(json.dumps(body_to_obj(body)) + "\n", args.out)


def cmd_symmetrize(args) -> int:
    try:
        body = load_body(args.body)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail(f"cannot parse body file {args.body}: {exc}", 2)
    try:
        direction = (
            Direction.axis(body.dim)
            if args.direction is None
            else _parse_direction(args.direction, body.dim)
        )
        sym = measure.schwarz_symmetral(body, direction)
    except ValueError as exc:
        return _fail(str(exc), 2)
    return _write_text(json.dumps(body_to_obj(sym, args.knot_budget)) + "\n", args.out)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grunbaum",
        description="Sharp cut and section bounds for centered convex bodies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print c1, c2, d at (alpha, n) as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sweep", help="tabulate the constants over an alpha range as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run all bound checks on a body file")
    p.add_argument("--body", required=True, help="path to a body JSON file")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--direction", default=None, help="comma-separated vector, normalized")
    p.add_argument("--mc-samples", type=int, default=0, help="add a Monte Carlo check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal", help="emit an extremal body as JSON")
    p.add_argument("--kind", required=True, choices=_EXTREMAL_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=None, help="base height for double-cone")
    p.add_argument("--lam", type=float, default=None, help="homothety ratio for truncated-cone")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("symmetrize", help="emit the Schwarz symmetral as a profile body")
    p.add_argument("--body", required=True)
    p.add_argument("--direction", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--knot-budget", type=int, default=129)
    p.set_defaults(func=cmd_symmetrize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
