"""Self-describing structured text reports.

Every report is plain text: a versioned header line, a ``kind`` line,
then sorted ``key value`` pairs.  Floats are written with ``repr`` so they
parse back to the identical value.

    minifp-report 1
    kind stats
    meta.kernel conv
    op.binary8.add.vector 6400
    ...
"""

from __future__ import annotations

from collections import Counter

from .costmodel import CostReport
from .errors import MinifpError
from .stats import OpKind, RegionTag, StatsReport, _freeze
from .typesys import NamedFormat

HEADER = "minifp-report 1"


class ReportFormatError(MinifpError):
    pass


def _fmt_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(kind: str, fields: dict[str, object], meta: dict[str, object] | None = None) -> str:
    lines = [HEADER, f"kind {kind}"]
    for key, value in sorted((meta or {}).items()):
        lines.append(f"meta.{key} {_fmt_value(value)}")
    for key, value in sorted(fields.items()):
        lines.append(f"{key} {_fmt_value(value)}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> tuple[str, dict[str, str]]:
    """Split a report into its kind and raw string fields."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise ReportFormatError("missing or unsupported report header")
    if not lines[1].startswith("kind "):
        raise ReportFormatError("missing report kind")
    kind = lines[1].split(None, 1)[1]
    fields: dict[str, str] = {}
    for ln in lines[2:]:
        try:
            key, value = ln.split(None, 1)
        except ValueError:
            raise ReportFormatError(f"malformed report line {ln!r}") from None
        fields[key] = value
    return kind, fields


def stats_fields(report: StatsReport) -> dict[str, object]:
    fields: dict[str, object] = {"other_instructions": report.other_instructions}
    for (named, kind, tag), n in report.ops.items():
        fields[f"op.{named.label}.{kind.value}.{tag.value}"] = n
    for (src, dst, tag), n in report.casts.items():
        fields[f"cast.{src.label}.{dst.label}.{tag.value}"] = n
    for (width, kind, tag), n in report.mem.items():
        fields[f"mem.{width}.{kind.value}.{tag.value}"] = n
    return fields


def render_stats(report: StatsReport, meta: dict[str, object] | None = None) -> str:
    return render("stats", stats_fields(report), meta)


def parse_stats(text: str) -> StatsReport:
    kind, fields = parse(text)
    if kind != "stats":
        raise ReportFormatError(f"expected a stats report, got kind {kind!r}")
    ops: Counter = Counter()
    casts: Counter = Counter()
    mem: Counter = Counter()
    other = 0
    kinds = {k.value: k for k in OpKind}
    tags = {t.value: t for t in RegionTag}
    try:
        for key, value in fields.items():
            parts = key.split(".")
            if key == "other_instructions":
                other = int(value)
            elif parts[0] == "meta":
                continue
            elif parts[0] == "op" and len(parts) == 4:
                ops[(NamedFormat.from_label(parts[1]), kinds[parts[2]],
                     tags[parts[3]])] += int(value)
            elif parts[0] == "cast" and len(parts) == 4:
                casts[(NamedFormat.from_label(parts[1]), NamedFormat.from_label(parts[2]),
                       tags[parts[3]])] += int(value)
            elif parts[0] == "mem" and len(parts) == 4:
                mem[(int(parts[1]), kinds[parts[2]], tags[parts[3]])] += int(value)
            else:
                raise ReportFormatError(f"unknown stats field {key!r}")
    except (KeyError, ValueError) as exc:
        raise ReportFormatError(f"malformed stats field: {exc}") from exc
    return StatsReport(_freeze(ops), _freeze(casts), _freeze(mem), other)


def cost_fields(report: CostReport) -> dict[str, object]:
    fields: dict[str, object] = {
        "cycles.total": report.cycles,
        "cycles.fp": report.cycles_fp,
        "cycles.cast": report.cycles_cast,
        "cycles.mem": report.cycles_mem,
        "cycles.other": report.cycles_other,
        "mem.scalar": report.mem_scalar,
        "mem.vector": report.mem_vector,
        "mem.total": report.mem_total,
        "energy.fp": report.energy_fp,
        "energy.mem": report.energy_mem,
        "energy.other": report.energy_other,
        "energy.total": report.energy,
    }
    for (named, tag), n in report.op_breakdown.items():
        fields[f"ops.{named.label}.{tag.value}"] = n
    if report.cycles_ratio is not None:
        fields["ratio.cycles"] = report.cycles_ratio
        fields["ratio.mem"] = report.mem_ratio
        fields["ratio.energy"] = report.energy_ratio
    return fields


def render_cost(report: CostReport, meta: dict[str, object] | None = None) -> str:
    return render("cost", cost_fields(report), meta)


def render_tuning(result, meta: dict[str, object] | None = None) -> str:
    from .tuner import tabulate
    from .typesys import V1, V2

    ts = {x.name: x for x in (V1, V2)}.get(result.type_system)
    fields: dict[str, object] = {
        "kernel": result.kernel,
        "threshold": result.threshold.value,
        "metric": result.threshold.metric,
        "type_system": result.type_system,
        "seeds": ",".join(str(s) for s in result.seeds),
        "evaluations": result.evaluations,
    }
    for name, p in result.assignment.items():
        fields[f"precision.{name}"] = p
    for seed, metric in zip(result.seeds, result.achieved):
        fields[f"achieved.{seed}"] = metric
    if ts is not None:
        for named, count in tabulate(result.assignment, ts).items():
            fields[f"storage.{named.label}"] = count
    return render("tuning", fields, meta)
