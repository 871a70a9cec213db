"""Drives an engine over an event stream and collects trace, results, stats."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .jugglepac import EngineConfig, JugglePacEngine
from .simplepac import SimplePacEngine
from .trace import RunStats, compute_stats


@dataclass(slots=True)
class RunResult:
    engine: object
    records: list | None
    results: list
    stats: RunStats


def run_jugglepac(config: EngineConfig, events, trace: bool = True) -> RunResult:
    """Feed every event, drain, and aggregate.

    With trace=False no per-cycle records are kept; stats come from the
    engine's own aggregates (bulk property runs use this path).
    """
    engine = JugglePacEngine(config)
    records: list | None = [] if trace else None
    for event in events:
        record = engine.step(event)
        if records is not None:
            records.append(record)
    engine.drain(sink=records)
    if records is not None:
        stats = compute_stats(records, engine.results)
    else:
        stats = RunStats(
            total_cycles=engine.cycle,
            drain_latency={r.ordinal: r.drain_latency for r in engine.results},
            utilization=(engine.state1_issues + engine.state0_issues) / engine.cycle
            if engine.cycle else 0.0,
            state1_issues=engine.state1_issues,
            state0_issues=engine.state0_issues,
            max_fifo=engine.max_fifo,
            max_counter=engine.max_counter,
            stall_cycles=0,
            output_order=[r.ordinal for r in engine.results],
        )
    return RunResult(engine=engine, records=records, results=engine.results, stats=stats)


def run_simplepac(p: int, events, mode: str = "exact", trace: bool = True) -> RunResult:
    """Same contract as run_jugglepac, honoring the baseline's stall protocol.

    While the engine is stalled the pending event is held; held cycles with a
    valid event waiting are marked as stalls in the trace.
    """
    engine = SimplePacEngine(p, mode)
    records: list | None = [] if trace else None
    stall_cycles = 0
    queue = deque(events)
    while queue:
        if engine.stalled:
            record = engine.step(None)
            if queue[0].valid:
                record.stall = True
                stall_cycles += 1
            else:
                queue.popleft()  # a scheduled gap passes while stalled
        else:
            record = engine.step(queue.popleft())
        if records is not None:
            records.append(record)
    engine.drain(sink=records)
    if records is not None:
        stats = compute_stats(records, engine.results)
    else:
        issues = engine.input_issues + engine.reduce_issues + engine.recycle_issues
        stats = RunStats(
            total_cycles=engine.cycle,
            drain_latency={r.ordinal: r.drain_latency for r in engine.results},
            utilization=issues / engine.cycle if engine.cycle else 0.0,
            state1_issues=engine.input_issues + engine.recycle_issues,
            state0_issues=engine.reduce_issues,
            max_fifo=0,
            max_counter=0,
            stall_cycles=stall_cycles,
            output_order=[r.ordinal for r in engine.results],
        )
    return RunResult(engine=engine, records=records, results=engine.results, stats=stats)
