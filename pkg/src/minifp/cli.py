"""Command-line driver: run kernels, tune precision, collect stats, estimate costs.

Kernel outputs go to standard output one value per line, formatted as the
shortest decimal that round-trips, so a downstream tool reading them back
sees bit-identical values.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import costmodel, report
from .errors import MinifpError
from .formats import BINARY32
from .kernels import KernelConfig, generate_input, get_kernel, run_kernel
from .stats import new_context
from .tuner import QualityThreshold, error_metric, tabulate, tune
from .typesys import V1, V2, FormatMap, NamedFormat, TypeSystem


def _parse_type_system(text: str) -> TypeSystem:
    lowered = text.lower()
    if lowered == "v1":
        return V1
    if lowered == "v2":
        return V2
    if lowered.startswith("custom:"):
        path = text.split(":", 1)[1]
        fmap = FormatMap.parse(Path(path).read_text())
        return TypeSystem(f"custom({path})", fmap)
    raise MinifpError(f"unknown type system {text!r}; use v1, v2 or custom:<mapfile>")


def _parse_params(items: list[str]) -> dict[str, int]:
    params: dict[str, int] = {}
    for item in items:
        if "=" not in item:
            raise MinifpError(f"bad --param {item!r}; expected name=value")
        name, value = item.split("=", 1)
        try:
            params[name.strip()] = int(value)
        except ValueError:
            raise MinifpError(f"bad --param value {value!r}; expected an integer") from None
    return params


def _parse_seeds(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise MinifpError(f"bad --seed {text!r}; expected integers") from None


def _read_precision_file(path: str) -> list[int]:
    values: list[int] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise MinifpError(f"{path}:{lineno}: expected an integer precision") from None
    return values


def _build_config(spec, args) -> KernelConfig:
    if args.precision_file:
        precisions = _read_precision_file(args.precision_file)
        ts = _parse_type_system(args.type_system)
        return KernelConfig.from_precisions(spec, precisions, ts)
    return KernelConfig.uniform(spec, BINARY32)


def _evaluate(args):
    spec = get_kernel(args.kernel)
    seeds = _parse_seeds(args.seed)
    if len(seeds) != 1:
        raise MinifpError("run/stats take exactly one --seed")
    inp = generate_input(spec.name, seeds[0], args.size, **_parse_params(args.param))
    config = _build_config(spec, args)
    ctx = new_context()
    out = run_kernel(spec, config, inp, ctx)
    meta = {"kernel": spec.name, "seed": seeds[0], "size": inp.size}
    return spec, inp, out, ctx.report(), meta


def cmd_run(args) -> int:
    _, _, out, stats, meta = _evaluate(args)
    for value in out:
        print(repr(float(value)))
    if args.report:
        Path(args.report).write_text(report.render_stats(stats, meta))
    return 0


def cmd_stats(args) -> int:
    _, _, _, stats, meta = _evaluate(args)
    text = report.render_stats(stats, meta)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_tune(args) -> int:
    spec = get_kernel(args.kernel)
    seeds = _parse_seeds(args.seed)
    if not seeds:
        raise MinifpError("tune needs at least one seed")
    ts = _parse_type_system(args.type_system)
    threshold = QualityThreshold(args.threshold)
    params = _parse_params(args.param)
    inputs = [generate_input(spec.name, s, args.size, **params) for s in seeds]
    result = tune(spec, inputs, threshold, ts)

    lines = [str(result.assignment[name]) for name in spec.variable_names()]
    Path(args.precision_file).write_text("\n".join(lines) + "\n")

    counts = tabulate(result.assignment, ts)
    print(f"kernel {result.kernel}  threshold {threshold.value!r}  "
          f"type-system {result.type_system}  evaluations {result.evaluations}")
    print(f"{'variable':<12} {'precision':>9}  storage")
    for name in spec.variable_names():
        p = result.assignment[name]
        from .typesys import classify_precision
        print(f"{name:<12} {p:>9}  {classify_precision(ts, p).label}")
    print("storage totals: " + "  ".join(
        f"{named.label}={counts[named]}" for named in NamedFormat))
    for seed, metric in zip(result.seeds, result.achieved):
        print(f"achieved metric (seed {seed}): {metric!r}")

    if args.report:
        meta = {"size": inputs[0].size}
        Path(args.report).write_text(report.render_tuning(result, meta))
    return 0


def cmd_cost(args) -> int:
    if not args.report:
        raise MinifpError("cost needs --report <stats file>")
    stats = report.parse_stats(Path(args.report).read_text())
    if args.tables:
        lt, et = costmodel.load_tables(Path(args.tables).read_text())
    else:
        lt, et = costmodel.LatencyTable(), costmodel.EnergyTable()
    cost = costmodel.estimate(stats, lt, et)
    if args.baseline:
        base_stats = report.parse_stats(Path(args.baseline).read_text())
        cost = costmodel.normalize(cost, costmodel.estimate(base_stats, lt, et))
    sys.stdout.write(report.render_cost(cost))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minifp",
        description="transprecision kernel runner, precision tuner and cost estimator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--kernel", required=True, help="kernel name (see docs)")
        p.add_argument("--seed", default="0", help="input seed; comma list for tune")
        p.add_argument("--size", type=int, default=None, help="kernel input size")
        p.add_argument("--param", action="append", default=[],
                       metavar="NAME=VALUE", help="kernel parameter override")
        p.add_argument("--type-system", default="v2",
                       help="v1, v2 or custom:<mapfile>")
        p.add_argument("--report", default=None, help="report file path")

    p_run = sub.add_parser("run", help="run a kernel, print outputs to stdout")
    common(p_run)
    p_run.add_argument("--precision-file", default=None,
                       help="per-variable precision bits, one per line")
    p_run.set_defaults(fn=cmd_run)

    p_stats = sub.add_parser("stats", help="run a kernel, emit its stats report")
    common(p_stats)
    p_stats.add_argument("--precision-file", default=None,
                         help="per-variable precision bits, one per line")
    p_stats.set_defaults(fn=cmd_stats)

    p_tune = sub.add_parser("tune", help="search minimal per-variable precisions")
    common(p_tune)
    p_tune.add_argument("--threshold", type=float, required=True,
                        help="relative noise power bound, e.g. 1e-2")
    p_tune.add_argument("--precision-file", required=True,
                        help="output path for the tuned precision list")
    p_tune.set_defaults(fn=cmd_tune)

    p_cost = sub.add_parser("cost", help="estimate cycles, memory and energy")
    p_cost.add_argument("--report", required=True, help="stats report to cost")
    p_cost.add_argument("--baseline", default=None,
                        help="baseline stats report for normalization")
    p_cost.add_argument("--tables", default=None,
                        help="latency/energy table overrides")
    p_cost.set_defaults(fn=cmd_cost)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (MinifpError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
