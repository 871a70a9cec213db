"""Cycle records, schedule rendering, trace files, and run statistics.

Subsum display names follow the provenance: dataset ordinals render as
letters (a, b, ..., z, aa, ab, ...), contiguous index runs of three or more
contract to the colon form (a_{0:3}), everything else lists indices
(a_{0,1}, a_{0,1,3,4}); a single index needs no braces (a_0); the additive
identity renders as 0.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .arith import Operand
from .errors import PacsimError

CSV_COLUMNS = [
    "cycle", "valid", "input", "state", "in1", "in2", "out",
    "fifo", "counters", "stall", "emitted",
]


@dataclass(slots=True)
class CycleRecord:
    """Everything observable about one simulated cycle."""

    cycle: int
    valid: bool
    input: tuple | None  # (ordinal, index) of the accepted element
    state: int | None  # 1, 0, or None when the engine has no state that cycle
    in1: Operand | None
    in2: Operand | None
    out: Operand | None
    out_final: bool
    fifo: int
    counters: tuple | None
    stall: bool
    emitted: tuple  # DatasetResult refs


def ordinal_letters(ordinal: int) -> str:
    """0 -> a, 25 -> z, 26 -> aa, 27 -> ab, ..."""
    if ordinal < 0:
        raise PacsimError(f"dataset ordinal must be non-negative, got {ordinal}")
    out = []
    k = ordinal
    while True:
        out.append(chr(ord("a") + k % 26))
        k = k // 26 - 1
        if k < 0:
            break
    return "".join(reversed(out))


def letters_ordinal(letters: str) -> int:
    """Inverse of ordinal_letters."""
    k = 0
    for ch in letters:
        k = k * 26 + (ord(ch) - ord("a") + 1)
    return k - 1


def _subscript(indices: list) -> str:
    """Render a sorted index list, contracting runs of three or more."""
    parts = []
    i = 0
    while i < len(indices):
        j = i
        while j + 1 < len(indices) and indices[j + 1] == indices[j] + 1:
            j += 1
        if j - i >= 2:
            parts.append(f"{indices[i]}:{indices[j]}")
        else:
            parts.extend(str(indices[k]) for k in range(i, j + 1))
        i = j + 1
    return ",".join(parts)


def operand_name(op: Operand | None) -> str:
    """Symbolic name of an operand from its provenance; identity is 0."""
    if op is None:
        return ""
    grouped = op.prov.by_ordinal()
    if not grouped:
        return "0"
    names = []
    for ordinal in sorted(grouped):
        letters = ordinal_letters(ordinal)
        indices = grouped[ordinal]
        if len(indices) == 1:
            names.append(f"{letters}_{indices[0]}")
        else:
            names.append(f"{letters}_{{{_subscript(indices)}}}")
    return "+".join(names)


def element_name(elem: tuple | None) -> str:
    if elem is None:
        return ""
    ordinal, index = elem
    return f"{ordinal_letters(ordinal)}_{index}"


@dataclass(slots=True)
class RowView:
    """A cycle record flattened to the strings that appear in trace files."""

    cycle: int
    valid: bool
    input: str
    state: int | None
    in1: str
    in2: str
    out: str
    fifo: int
    counters: tuple | None
    stall: bool
    emitted: tuple  # dataset ordinals


def rows_from_records(records) -> list:
    rows = []
    for r in records:
        rows.append(
            RowView(
                cycle=r.cycle,
                valid=r.valid,
                input=element_name(r.input),
                state=r.state,
                in1=operand_name(r.in1),
                in2=operand_name(r.in2),
                out=operand_name(r.out),
                fifo=r.fifo,
                counters=r.counters,
                stall=r.stall,
                emitted=tuple(res.ordinal for res in r.emitted),
            )
        )
    return rows


def _as_rows(trace) -> list:
    trace = list(trace)
    if trace and isinstance(trace[0], CycleRecord):
        return rows_from_records(trace)
    return trace


# -- schedule table ---------------------------------------------------------

def render_schedule(trace) -> str:
    """Fixed-width text table: Cycle | Input | in1 | in2 | out."""
    rows = _as_rows(trace)
    headers = ["Cycle", "Input", "in1", "in2", "out"]
    cells = []
    for row in rows:
        input_cell = "Stall" if row.stall else row.input
        cells.append([str(row.cycle), input_cell, row.in1, row.in2, row.out])
    widths = [len(h) for h in headers]
    for row_cells in cells:
        for i, cell in enumerate(row_cells):
            widths[i] = max(widths[i], len(cell))
    lines = []
    header = " | ".join(h.ljust(widths[i]) for i, h in enumerate(headers))
    lines.append(header.rstrip())
    lines.append("-+-".join("-" * w for w in widths))
    for row_cells in cells:
        parts = [row_cells[0].rjust(widths[0])]
        parts.extend(row_cells[i].ljust(widths[i]) for i in range(1, 5))
        lines.append(" | ".join(parts).rstrip())
    return "\n".join(lines) + "\n"


# -- trace files ------------------------------------------------------------

def _counters_cell(counters) -> str:
    if counters is None:
        return ""
    return ";".join(str(c) for c in counters)


def _emitted_cell(emitted) -> str:
    return ";".join(str(o) for o in emitted)


def write_trace_csv(trace, fp) -> None:
    """One row per cycle in the fixed column order."""
    rows = _as_rows(trace)
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([
            r.cycle,
            int(r.valid),
            r.input,
            "" if r.state is None else r.state,
            r.in1,
            r.in2,
            r.out,
            r.fifo,
            _counters_cell(r.counters),
            int(r.stall),
            _emitted_cell(r.emitted),
        ])


def parse_trace_csv(fp) -> list:
    reader = csv.reader(fp)
    header = next(reader, None)
    if header != CSV_COLUMNS:
        raise PacsimError(f"unexpected trace CSV header: {header}")
    rows = []
    for rec in reader:
        (cycle, valid, inp, state, in1, in2, out, fifo, counters, stall, emitted) = rec
        rows.append(
            RowView(
                cycle=int(cycle),
                valid=bool(int(valid)),
                input=inp,
                state=None if state == "" else int(state),
                in1=in1,
                in2=in2,
                out=out,
                fifo=int(fifo),
                counters=None if counters == "" else tuple(int(c) for c in counters.split(";")),
                stall=bool(int(stall)),
                emitted=tuple(int(o) for o in emitted.split(";")) if emitted else (),
            )
        )
    return rows


def write_trace_jsonl(trace, fp) -> None:
    rows = _as_rows(trace)
    for r in rows:
        fp.write(json.dumps({
            "cycle": r.cycle,
            "valid": r.valid,
            "input": r.input,
            "state": r.state,
            "in1": r.in1,
            "in2": r.in2,
            "out": r.out,
            "fifo": r.fifo,
            "counters": None if r.counters is None else list(r.counters),
            "stall": r.stall,
            "emitted": list(r.emitted),
        }) + "\n")


def parse_trace_jsonl(fp) -> list:
    rows = []
    for line in fp:
        if not line.strip():
            continue
        d = json.loads(line)
        rows.append(
            RowView(
                cycle=d["cycle"],
                valid=d["valid"],
                input=d["input"],
                state=d["state"],
                in1=d["in1"],
                in2=d["in2"],
                out=d["out"],
                fifo=d["fifo"],
                counters=None if d["counters"] is None else tuple(d["counters"]),
                stall=d["stall"],
                emitted=tuple(d["emitted"]),
            )
        )
    return rows


def trace_csv_string(trace) -> str:
    buf = io.StringIO()
    write_trace_csv(trace, buf)
    return buf.getvalue()


# -- statistics -------------------------------------------------------------

@dataclass(slots=True)
class RunStats:
    """Aggregates of a completed (drained) run."""

    total_cycles: int
    drain_latency: dict = field(default_factory=dict)  # ordinal -> cycles
    utilization: float = 0.0
    state1_issues: int = 0
    state0_issues: int = 0
    max_fifo: int = 0
    max_counter: int = 0
    stall_cycles: int = 0
    output_order: list = field(default_factory=list)

    def latency_spread(self) -> int:
        if not self.drain_latency:
            return 0
        latencies = list(self.drain_latency.values())
        return max(latencies) - min(latencies)

    def in_order(self) -> bool:
        return self.output_order == sorted(self.output_order)


def compute_stats(trace, results=None) -> RunStats:
    """Statistics over a drained run's trace.

    Everything is derived from the rows themselves so that stats recomputed
    from a written trace file equal stats computed live; when `results` is
    given it is cross-checked against the trace.
    """
    rows = _as_rows(trace)
    last_input: dict = {}
    completion: dict = {}
    issues = 0
    state1 = state0 = 0
    max_fifo = 0
    max_counter = 0
    stalls = 0
    order = []
    for r in rows:
        if r.valid and r.input and not r.stall:
            letters = r.input.split("_", 1)[0]
            last_input[letters_ordinal(letters)] = r.cycle
        if r.in1 or r.in2:
            issues += 1
            if r.state == 1:
                state1 += 1
            elif r.state == 0:
                state0 += 1
        max_fifo = max(max_fifo, r.fifo)
        if r.counters:
            max_counter = max(max_counter, max(r.counters))
        if r.stall:
            stalls += 1
        for ordinal in r.emitted:
            completion[ordinal] = r.cycle
            order.append(ordinal)
    latency = {o: completion[o] - last_input[o] for o in completion if o in last_input}
    stats = RunStats(
        total_cycles=len(rows),
        drain_latency=latency,
        utilization=issues / len(rows) if rows else 0.0,
        state1_issues=state1,
        state0_issues=state0,
        max_fifo=max_fifo,
        max_counter=max_counter,
        stall_cycles=stalls,
        output_order=order,
    )
    if results is not None:
        expected = {r.ordinal: r.drain_latency for r in results}
        if expected != stats.drain_latency:
            raise PacsimError(
                f"trace-derived latencies {stats.drain_latency} disagree with results {expected}"
            )
    return stats


def write_stats_csv(stats: RunStats, fp) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerow(["total_cycles", stats.total_cycles])
    writer.writerow(["utilization", f"{stats.utilization:.6f}"])
    writer.writerow(["state1_issues", stats.state1_issues])
    writer.writerow(["state0_issues", stats.state0_issues])
    writer.writerow(["max_fifo", stats.max_fifo])
    writer.writerow(["max_counter", stats.max_counter])
    writer.writerow(["stall_cycles", stats.stall_cycles])
    writer.writerow(["output_order", " ".join(str(o) for o in stats.output_order)])
    for ordinal in sorted(stats.drain_latency):
        writer.writerow([f"drain_latency_{ordinal}", stats.drain_latency[ordinal]])
