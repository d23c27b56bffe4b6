"""minifp: transprecision floating-point toolkit.

Parameterized minifloat formats with bit-exact, correctly rounded
arithmetic; a precision-interval type system; instrumented benchmark
kernels; a per-variable precision tuner; and an analytical cost model of a
sub-word-vectorizing transprecision FPU.
"""

from .costmodel import (CostReport, EnergyTable, LatencyTable, VectorLanes,
                        estimate, load_tables, normalize, pack_vectors)
from .errors import (ConfigError, DivisionByZeroBaseline, FormatMismatch,
                     Infeasible, InvalidConversion, LengthMismatch,
                     MinifpError, MissingTableEntry, MixedVectorRegion,
                     OutOfRange, RegionImbalance, UnknownKernel)
from .formats import (BINARY8, BINARY16, BINARY16ALT, BINARY32, FloatFormat,
                      make_format)
from .kernels import (KernelConfig, KernelInput, KernelSpec, generate_input,
                      get_kernel, list_kernels, reference_output, run_kernel)
from .stats import (OpKind, RegionTag, StatsContext, StatsReport, merge,
                    new_context)
from .tuner import (QualityThreshold, TuningResult, error_metric,
                    refine_across_inputs, tabulate, tune, tune_single_input)
from .typesys import (V1, V2, FormatMap, NamedFormat, TypeSystem,
                      classify_precision, map_precision, storage_class)
from .values import (FlexNum, FpClass, Ordering, add, cast_fp, cast_from_int,
                     cast_to_int, classify, compare, decode, div, encode,
                     max_finite, min_finite, mul, sqrt, sub, ulp)

__version__ = "0.1.0"
