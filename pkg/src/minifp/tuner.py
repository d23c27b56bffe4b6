"""Heuristic per-variable precision minimization against a quality bound.

The search contract: a kernel runs with per-variable-group precision bits,
its output is compared against the all-binary32 reference with a relative
noise-power metric, and the tuner finds, per input set, a small assignment
that satisfies the bound and is 1-minimal (lowering any single group by
one bit breaks it).  Assignments from several input sets are joined by a
pointwise maximum followed by a joint repair pass.

Strategy: groups are visited in declaration order; each gets a binary
search over precision with the others held fixed (starting from the
always-feasible all-24 configuration), then a descent loop enforces
1-minimality.  The sequence of decisions is deterministic for fixed
inputs, threshold, type system and declaration order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import Infeasible, LengthMismatch
from .kernels import KernelConfig, KernelInput, KernelSpec, reference_output, run_kernel
from .stats import new_context
from .typesys import MAX_PRECISION, NamedFormat, TypeSystem, classify_precision

MIN_PRECISION = 1


@dataclass(frozen=True)
class QualityThreshold:
    """Upper bound on noise power relative to signal power."""

    value: float
    metric: str = "noise_to_signal_power"

    def __post_init__(self) -> None:
        if not self.value > 0:
            raise ValueError("quality threshold must be positive")


@dataclass(frozen=True)
class TuningResult:
    kernel: str
    threshold: QualityThreshold
    type_system: str
    seeds: tuple[int, ...]
    assignment: dict[str, int]
    per_input: tuple[dict[str, int], ...]
    achieved: tuple[float, ...]
    evaluations: int


def error_metric(ref: np.ndarray, test: np.ndarray) -> float:
    """Relative noise power ``sum((ref-test)^2) / sum(ref^2)``.

    Returns ``inf`` when ``test`` contains a non-finite value where the
    reference is finite.  An all-zero reference yields 0 when the outputs
    agree exactly and ``inf`` otherwise.
    """
    ref = np.asarray(ref, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if ref.shape != test.shape:
        raise LengthMismatch(f"output lengths differ: {ref.shape} vs {test.shape}")
    if not np.all(np.isfinite(test) | ~np.isfinite(ref)):
        return math.inf
    noise = float(np.sum((ref - test) ** 2))
    signal = float(np.sum(ref ** 2))
    if signal == 0.0:
        return 0.0 if noise == 0.0 else math.inf
    return noise / signal


class _Evaluator:
    """Caches metric evaluations for one (kernel, input) pair."""

    def __init__(self, spec: KernelSpec, inp: KernelInput, ts: TypeSystem):
        self.spec = spec
        self.inp = inp
        self.ts = ts
        self.ref = reference_output(spec, inp)
        self.runs = 0
        self._cache: dict[tuple[int, ...], float] = {}

    def metric(self, assignment: Mapping[str, int]) -> float:
        key = tuple(assignment[name] for name in self.spec.variable_names())
        if key not in self._cache:
            config = KernelConfig.from_precisions(self.spec, list(key), self.ts)
            out = run_kernel(self.spec, config, self.inp, new_context())
            self._cache[key] = error_metric(self.ref, out)
            self.runs += 1
        return self._cache[key]


def _coerce_threshold(t: QualityThreshold | float) -> QualityThreshold:
    return t if isinstance(t, QualityThreshold) else QualityThreshold(float(t))


def tune_single_input(spec: KernelSpec, inp: KernelInput,
                      threshold: QualityThreshold | float, ts: TypeSystem,
                      _evaluator: _Evaluator | None = None) -> dict[str, int]:
    """Minimal passing precision assignment for one input set.

    The returned assignment satisfies the threshold and is 1-minimal:
    re-evaluating with any single group lowered by one bit violates it.
    """
    t = _coerce_threshold(threshold).value
    ev = _evaluator or _Evaluator(spec, inp, ts)
    names = spec.variable_names()
    current = {name: MAX_PRECISION for name in names}
    if not ev.metric(current) <= t:
        raise Infeasible(f"kernel {spec.name!r}: even all-{MAX_PRECISION}-bit "
                         f"precision misses threshold {t}")

    for name in names:
        lo, hi = MIN_PRECISION, current[name]
        while lo < hi:
            mid = (lo + hi) // 2
            if ev.metric({**current, name: mid}) <= t:
                hi = mid
            else:
                lo = mid + 1
        current[name] = lo

    # The sequential pass can overshoot when the metric is not monotone in
    # a single group; descend until no single decrement passes.
    changed = True
    while changed:
        changed = False
        for name in names:
            while current[name] > MIN_PRECISION and \
                    ev.metric({**current, name: current[name] - 1}) <= t:
                current[name] -= 1
                changed = True
    return current


def refine_across_inputs(spec: KernelSpec, inputs: Sequence[KernelInput],
                         threshold: QualityThreshold | float, ts: TypeSystem,
                         assignments: Sequence[Mapping[str, int]],
                         _evaluators: Sequence[_Evaluator] | None = None) -> dict[str, int]:
    """Join per-input assignments: pointwise max, then joint repair.

    While any input set fails the threshold, the group whose unit
    increment reduces the total metric over failing inputs the most is
    raised (ties broken by declaration order).  Terminates because the
    all-24 assignment reproduces the reference exactly.
    """
    if not assignments:
        raise ValueError("need at least one assignment to join")
    t = _coerce_threshold(threshold).value
    evs = _evaluators or [_Evaluator(spec, inp, ts) for inp in inputs]
    names = spec.variable_names()
    joined = {name: max(a[name] for a in assignments) for name in names}

    while True:
        failing = [ev for ev in evs if ev.metric(joined) > t]
        if not failing:
            return joined
        best_name, best_total = None, math.inf
        for name in names:
            if joined[name] >= MAX_PRECISION:
                continue
            bumped = {**joined, name: joined[name] + 1}
            total = sum(ev.metric(bumped) for ev in failing)
            if total < best_total:
                best_name, best_total = name, total
        if best_name is None:
            raise Infeasible(f"kernel {spec.name!r}: joint repair exhausted "
                             f"the precision range")
        joined[best_name] += 1


def tune(spec: KernelSpec, inputs: Sequence[KernelInput],
         threshold: QualityThreshold | float, ts: TypeSystem) -> TuningResult:
    """Full tuning flow over one or more input sets."""
    t = _coerce_threshold(threshold)
    evs = [_Evaluator(spec, inp, ts) for inp in inputs]
    per_input = tuple(tune_single_input(spec, inp, t, ts, _evaluator=ev)
                      for inp, ev in zip(inputs, evs))
    joined = refine_across_inputs(spec, inputs, t, ts, per_input, _evaluators=evs)
    achieved = tuple(ev.metric(joined) for ev in evs)
    assert all(a <= t.value for a in achieved)
    return TuningResult(
        kernel=spec.name,
        threshold=t,
        type_system=ts.name,
        seeds=tuple(inp.seed for inp in inputs),
        assignment=joined,
        per_input=per_input,
        achieved=achieved,
        evaluations=sum(ev.runs for ev in evs),
    )


def tabulate(assignment: Mapping[str, int], ts: TypeSystem) -> dict[NamedFormat, int]:
    """Count variable groups per named storage type."""
    counts = {named: 0 for named in NamedFormat}
    for p in assignment.values():
        counts[classify_precision(ts, p)] += 1
    return counts
