"""Cycle-accurate simulation and verification of pipelined accumulation circuits."""

from .arith import EXACT, IEEE, Operand, Provenance, add, identity
from .errors import (
    ConfigError,
    EngineError,
    FifoOverflowError,
    InternalInvariantError,
    MixingError,
    PacsimError,
    WorkloadError,
)
from .jugglepac import (
    EngineConfig,
    JugglePacEngine,
    ceil_log2,
    drain_residency_bound,
    fifo_capacity,
    min_dataset_length,
    ramp_cycles,
)
from .oracle import Verdict, fp_error, oracle_sum, verify_result
from .pipeline import AdderOp, AdderPipeline
from .runner import RunResult, run_jugglepac, run_simplepac
from .simplepac import SimplePacEngine
from .stream import DatasetResult, InputEvent, MixingDiagnostic, Subsum
from .trace import (
    CycleRecord,
    RunStats,
    compute_stats,
    render_schedule,
    rows_from_records,
)
from .workload import Dataset, WorkloadSpec, events_for_lengths, expand, load_workload

__all__ = [
    "EXACT", "IEEE", "Operand", "Provenance", "add", "identity",
    "ConfigError", "EngineError", "FifoOverflowError", "InternalInvariantError",
    "MixingError", "PacsimError", "WorkloadError",
    "EngineConfig", "JugglePacEngine", "ceil_log2", "drain_residency_bound",
    "fifo_capacity", "min_dataset_length", "ramp_cycles",
    "Verdict", "fp_error", "oracle_sum", "verify_result",
    "AdderOp", "AdderPipeline",
    "RunResult", "run_jugglepac", "run_simplepac",
    "SimplePacEngine",
    "DatasetResult", "InputEvent", "MixingDiagnostic", "Subsum",
    "CycleRecord", "RunStats", "compute_stats", "render_schedule", "rows_from_records",
    "Dataset", "WorkloadSpec", "events_for_lengths", "expand", "load_workload",
]
