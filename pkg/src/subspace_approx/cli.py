"""Command-line front end: ``subspace-approx <command> ...``.

Exit status: 0 on success, 2 on usage errors, 1 when the input is invalid or
a checked property is violated.
"""
from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

import numpy as np

from . import __version__
from .angles import psi
from .charts import GraphChart
from .enumeration import best_approx, count_by_height, heights_sq, pluecker_table
from .experiments import (
    ExperimentConfig,
    Table,
    dirichlet_experiment,
    fmt,
    lower_bound_experiment,
)
from .geometry import XiEtaPoint, tube_volume
from .lattice import RationalSubspace, SubspaceError
from .series import OmegaFunction, check_series

_COORD_PLANE = re.compile(r"^e([1-4])e([1-4])$")


def parse_plane(text: str):
    """A plane given as ``e1e2`` (coordinate plane), ``a,b,c,d;e,f,g,h`` (basis),
    ``graph:IJ:l11,l12,l21,l22`` or ``pluecker:p12,p13,p14,p23,p24,p34``.

    Integer bases and Plücker vectors give a :class:`RationalSubspace`; other
    forms give a :class:`GraphChart` or a real 2x4 array.
    """
    text = text.strip()
    m = _COORD_PLANE.match(text)
    if m:
        i, j = int(m.group(1)), int(m.group(2))
        if i == j:
            raise SubspaceError("not a plane (repeated axis)")
        rows = [[int(k == i) for k in range(1, 5)], [int(k == j) for k in range(1, 5)]]
        return RationalSubspace.from_basis(rows)
    if text.startswith("graph:"):
        _, label, entries = text.split(":", 2)
        if len(label) != 2 or not label.isdigit():
            raise SubspaceError(f"bad chart label {label!r}")
        vals = [float(x) for x in entries.split(",")]
        if len(vals) != 4:
            raise SubspaceError("a graph matrix has four entries")
        return GraphChart.from_entries((int(label[0]), int(label[1])), *vals)
    if text.startswith("pluecker:"):
        p = [int(x) for x in text.split(":", 1)[1].split(",")]
        return RationalSubspace.from_pluecker(p)
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 4 for r in rows):
        raise SubspaceError(f"cannot parse plane {text!r}")
    try:
        ints = [[int(x) for x in r] for r in rows]
    except ValueError:
        return np.array([[float(x) for x in r] for r in rows])
    return RationalSubspace.from_basis(ints)


def _rational(text: str) -> RationalSubspace:
    plane = parse_plane(text)
    if not isinstance(plane, RationalSubspace):
        raise SubspaceError("an integer basis or Plücker vector is required here")
    return plane


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scalar(args: argparse.Namespace, name: str, value, schema: str, extra: dict | None = None) -> None:
    """Bare value by default; a one-row table with ``--format csv|json``."""
    if args.format is None:
        _emit(args, fmt(value) + "\n")
        return
    row = {name: value, **(extra or {})}
    table = Table(schema, tuple(row), [tuple(row.values())])
    _emit(args, table.render(args.format))


def _summary(args: argparse.Namespace, table: Table) -> None:
    # summary goes to stderr so that stdout stays a clean table
    for k, v in table.summary.items():
        print(f"# {k}={fmt(v)}", file=sys.stderr)


def cmd_height(args) -> int:
    sub = _rational(args.plane)
    _scalar(args, "height_sq", sub.height_sq, "height.v1", {"height": sub.height})
    return 0


def cmd_pluecker(args) -> int:
    sub = _rational(args.plane)
    text = ",".join(map(str, sub.pluecker))
    if args.format is None:
        _emit(args, text + "\n")
    else:
        cols = ("p12", "p13", "p14", "p23", "p24", "p34")
        _emit(args, Table("pluecker.v1", cols, [sub.pluecker]).render(args.format))
    return 0


def cmd_angle(args) -> int:
    _scalar(args, "psi", psi(parse_plane(args.a), parse_plane(args.b)), "angle.v1")
    return 0


def cmd_enumerate(args) -> int:
    table = pluecker_table(args.hsq_max)
    rows = [tuple(int(x) for x in r) + (int(h),) for r, h in zip(table, heights_sq(table))]
    cols = ("p12", "p13", "p14", "p23", "p24", "p34", "height_sq")
    _emit(args, Table("enumerate.v1", cols, rows).render(args.format or "csv"))
    return 0


def cmd_count(args) -> int:
    counts = count_by_height(args.hsq_max)
    if args.format in (None, "csv"):
        lines = ["level_hsq,count"] + [f"{k},{v}" for k, v in counts.items()]
        _emit(args, "\n".join(lines) + "\n")
    else:
        rows = list(counts.items())
        _emit(args, Table("count.v1", ("level_hsq", "count"), rows, {"hsq_max": args.hsq_max}).render("json"))
    return 0


def cmd_best_approx(args) -> int:
    records = best_approx(parse_plane(args.a), args.hsq_max)
    rows = [(r.height_sq, r.psi_value, " ".join(map(str, r.best.pluecker))) for r in records]
    _emit(args, Table("best-approx.v1", ("hsq", "psi", "pluecker"), rows).render(args.format or "csv"))
    return 0


def cmd_tube_volume(args) -> int:
    z = XiEtaPoint(*args.z)
    est = tube_volume(z, args.T, args.eps, args.samples, args.seed)
    row = (est.estimate, est.low, est.high, est.hits, est.samples, est.ball_volume)
    cols = ("estimate", "low", "high", "hits", "samples", "ball_volume")
    cfg = {"z": list(args.z), "T": args.T, "eps": args.eps, "samples": args.samples, "seed": args.seed}
    _emit(args, Table("tube-volume.v1", cols, [row], cfg).render(args.format or "csv"))
    return 0


def cmd_check_series(args) -> int:
    verdict = check_series(OmegaFunction.parse(args.omega), args.w_max)
    if args.format is None:
        _emit(args, verdict.classification + "\n")
        return 0
    rows = [(w, s) for w, s in verdict.partial_sums]
    summary = {"classification": verdict.classification, "method": verdict.method}
    table = Table("series.v1", ("W", "partial_sum"), rows, {"omega": args.omega, "w_max": args.w_max}, summary)
    _emit(args, table.render(args.format))
    _summary(args, table)
    return 0


def _config(args) -> ExperimentConfig:
    return ExperimentConfig(
        seed=args.seed,
        delta=args.delta,
        h_sq_max=args.hsq_max,
        num_planes=args.num_planes,
        output=args.out,
        w_max=args.w_max,
    )


def cmd_experiment(args) -> int:
    config = _config(args)
    if args.kind == "dirichlet":
        table = dirichlet_experiment(config)
    else:
        table = lower_bound_experiment(config, OmegaFunction.parse(args.omega))
    _emit(args, table.render(args.format or "csv"))
    _summary(args, table)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(
        prog="subspace-approx",
        description="Rational approximation of 2-planes in R^4.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("height", parents=[common], help="squared height of a rational plane")
    p.add_argument("plane")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("pluecker", parents=[common], help="canonical Plücker vector")
    p.add_argument("plane")
    p.set_defaults(func=cmd_pluecker)

    p = sub.add_parser("angle", parents=[common], help="smallest principal angle between two planes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_angle)

    p = sub.add_parser("enumerate", parents=[common], help="all rational planes up to a height")
    p.add_argument("--hsq-max", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common], help="number of rational planes per height level")
    p.add_argument("--hsq-max", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("best-approx", parents=[common], help="record best approximations of a plane")
    p.add_argument("--a", required=True)
    p.add_argument("--hsq-max", type=int, default=100)
    p.set_defaults(func=cmd_best_approx)

    p = sub.add_parser("tube-volume", parents=[common], help="Monte-Carlo volume of a cone tube in a ball")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--z", type=float, nargs=4, default=(0.0, 0.0, 0.0, 0.0), metavar=("XI1", "XI2", "ETA1", "ETA2"))
    p.set_defaults(func=cmd_tube_volume)

    p = sub.add_parser("check-series", parents=[common], help="classify sum_j j*omega(sqrt j)")
    p.add_argument("--omega", required=True, help="pow:B | table:PATH | expr:FORMULA")
    p.add_argument("--w-max", type=int, default=1 << 20)
    p.set_defaults(func=cmd_check_series)

    p = sub.add_parser("experiment", parents=[common], help="run an experiment and emit its table")
    p.add_argument("kind", choices=("dirichlet", "lower-bound"))
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--hsq-max", type=int, default=100)
    p.add_argument("--num-planes", type=int, default=50)
    p.add_argument("--omega", default="pow:4.5")
    p.add_argument("--w-max", type=int, default=1 << 16)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SubspaceError, ValueError, AssertionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
