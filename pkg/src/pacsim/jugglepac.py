"""The juggling accumulator: a fully pipelined single-adder engine.

Scheduling per cycle:

* A valid input is always accepted (throughput 1, no back-pressure).
* In state 1 the two oldest buffered elements of the oldest open dataset are
  issued to the adder; a lone element is issued against the additive identity
  ("the input is forced to 0"), which happens for the last element of an
  odd-length dataset and under gap starvation.
* In state 0 the head entry of the ready-pair FIFO is issued.
* The state bit toggles every cycle, except that it stays in state 1 for one
  extra cycle after a lone *last* element was issued, which realigns input
  pairing for the next dataset.
* An emerging result is routed to the pair-identifier slot of its label; if
  the slot is occupied the two subsums form a ready pair pushed to the FIFO;
  a result flagged final is emitted instead.  A result emerging at cycle t can
  be issued again at cycle t (same-cycle forwarding), which the schedule in
  the golden tests depends on.

Output identification uses one up-down counter per label: +1 per state-1
issue except the dataset's first, -1 per state-0 issue.  The issue that
returns the counter to 0 after the dataset's last element was consumed is
tagged final; the tag rides the pipeline and diverts the result to the output
port p cycles later.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .arith import EXACT, Operand, Provenance, check_mode, check_value, identity
from .errors import ConfigError, FifoOverflowError, InternalInvariantError, MixingError, WorkloadError
from .pipeline import AdderOp, AdderPipeline
from .stream import DatasetResult, InputEvent, MixingDiagnostic, Subsum
from .trace import CycleRecord

MAX_LABEL_WIDTH = 20  # 2^20 pair-identifier slots; wider labels exhaust memory


def ceil_log2(n: int) -> int:
    """Smallest k with 2^k >= n, for n >= 1."""
    return (n - 1).bit_length()


def min_dataset_length(p: int, label_width: int) -> int:
    """Smallest dataset length that keeps 2^L live datasets from colliding.

    Consecutive datasets must jointly cover the worst-case residency of a
    draining dataset, (1 + ceil(log2 p)) * p + 4 cycles; datasets shorter than
    4 are never recognized by the output identification logic.
    """
    if p < 1 or label_width < 1:
        raise ConfigError("p and label width must be >= 1")
    numerator = (1 + ceil_log2(p)) * p + 4
    return max(-(-numerator // ((1 << label_width) - 1)), 4)


def ramp_cycles(p: int) -> int:
    """Cycles from start during which only state 1 can issue additions.

    p + 3 cycles to produce two subsums of one label, plus one alignment
    cycle when p is even (the first ready pair then lands on a state-1
    cycle and must wait for the next state-0 slot).
    """
    if p < 1:
        raise ConfigError("p must be >= 1")
    return p + 3 + (1 - (p % 2))


def drain_residency_bound(p: int) -> int:
    """Upper bound on cycles from a dataset's last input to its final result."""
    if p < 1:
        raise ConfigError("p must be >= 1")
    return (1 + ceil_log2(p)) * p + 4


def fifo_capacity(p: int) -> int:
    """Ready-pair FIFO depth: ceil(log2 p), floored at one physical slot.

    The floor matters only for p = 1, where an odd-length dataset's tail pair
    can form on a state-1 cycle and must wait one cycle; a zero-entry queue
    could not hold it.
    """
    return max(1, ceil_log2(p))


@dataclass(slots=True)
class EngineConfig:
    adder_latency_p: int = 14
    label_width_L: int = 2
    mode: str = EXACT
    enforce_min_length: bool = True
    extra_input_stages: int = 0

    def __post_init__(self):
        if not isinstance(self.adder_latency_p, int) or self.adder_latency_p < 1:
            raise ConfigError(f"adder latency must be a positive integer, got {self.adder_latency_p!r}")
        if not isinstance(self.label_width_L, int) or self.label_width_L < 1:
            raise ConfigError(f"label width must be a positive integer, got {self.label_width_L!r}")
        if self.label_width_L > MAX_LABEL_WIDTH:
            raise ConfigError(
                f"label width {self.label_width_L} exceeds the supported maximum {MAX_LABEL_WIDTH}"
            )
        check_mode(self.mode)
        if not isinstance(self.extra_input_stages, int) or self.extra_input_stages < 0:
            raise ConfigError("extra_input_stages must be a non-negative integer")


@dataclass(slots=True)
class _Buffered:
    value: object
    prov: Provenance
    ordinal: int
    index: int
    last: bool


class JugglePacEngine:
    """Cycle-stepped model of the juggling accumulator."""

    def __init__(self, config: EngineConfig):
        self.config = config
        p = config.adder_latency_p
        self.p = p
        self.label_count = 1 << config.label_width_L
        self.min_length = min_dataset_length(p, config.label_width_L)
        self.fifo_capacity = fifo_capacity(p)
        self.counter_max_allowed = p + 2
        self.mode = config.mode
        self._identity = identity(config.mode)

        self.pipe = AdderPipeline(p)
        self.buffer: deque = deque()  # _Buffered, arrival order
        self.pi: list = [None] * self.label_count  # pending Subsum per label
        self.fifo: deque = deque()  # (Subsum, Subsum, label)
        self.counters = [0] * self.label_count
        self.first_seen = [False] * self.label_count
        self.last_consumed = [False] * self.label_count
        self.label_owner: list = [None] * self.label_count

        self.state = 0  # state for the upcoming cycle; first state-1 cycle is cycle 1
        self._hold_state1 = False
        self.cycle = 0
        self._input_delay: deque = deque(
            [InputEvent.gap()] * config.extra_input_stages
        )

        self._open_ordinal = None  # dataset currently receiving inputs
        self._open_count = 0
        self._next_ordinal = 0
        self._dataset_meta: dict = {}  # ordinal -> (last_input_cycle, length)

        self.results: list = []
        self.diagnostics: list = []
        self.counter_events: dict = {}  # label -> [(cycle, value)]

        # run aggregates, cheap enough to keep always
        self.accepted = 0
        self.last_valid_cycle: int | None = None
        self.max_fifo = 0
        self.max_counter = 0
        self.state1_issues = 0
        self.state0_issues = 0
        self.max_buffer = 0
        self.first_state0_cycle: int | None = None

    # -- cycle stepping ----------------------------------------------------

    def step(self, event: InputEvent) -> CycleRecord:
        """Advance exactly one cycle; returns the cycle's record."""
        t = self.cycle
        state = self.state
        if self._input_delay:
            self._input_delay.append(event)
            event = self._input_delay.popleft()

        accepted = self._accept_input(event, t)

        emerging = self.pipe.advance(t)
        out = None
        out_final = False
        emitted = ()
        if emerging is not None:
            out = emerging.result
            out_final = emerging.final
            if emerging.final:
                last_cycle, _length = self._dataset_meta[emerging.ordinal]
                result = DatasetResult(
                    ordinal=emerging.ordinal,
                    label=emerging.label,
                    value=emerging.result.value,
                    provenance=emerging.result.prov,
                    completion_cycle=t,
                    last_input_cycle=last_cycle,
                )
                self.results.append(result)
                emitted = (result,)
            else:
                self._route_to_pair_identifier(emerging, t)

        in1 = in2 = None
        issue_state = None
        if state == 1:
            issued = self._issue_state1(t)
            if issued is not None:
                in1, in2 = issued
                issue_state = 1
        else:
            issued = self._issue_state0(t)
            if issued is not None:
                in1, in2 = issued
                issue_state = 0

        occupancy = len(self.fifo)
        if occupancy > self.fifo_capacity:
            raise FifoOverflowError(t, self.fifo[-1][2], self.fifo_capacity)
        if occupancy > self.max_fifo:
            self.max_fifo = occupancy
        if len(self.buffer) > self.max_buffer:
            self.max_buffer = len(self.buffer)

        if self._hold_state1:
            self.state = 1
            self._hold_state1 = False
        else:
            self.state = 1 - state
        self.cycle = t + 1

        return CycleRecord(
            cycle=t,
            valid=accepted is not None,
            input=accepted,
            state=state,
            in1=in1,
            in2=in2,
            out=out,
            out_final=out_final,
            fifo=occupancy,
            counters=tuple(self.counters),
            stall=False,
            emitted=emitted,
        )

    def _accept_input(self, event: InputEvent, t: int):
        if not event.valid:
            return None
        check_value(event.value, self.mode)
        if self._open_ordinal is None:
            ordinal = self._next_ordinal
            self._next_ordinal += 1
            self._open_ordinal = ordinal
            self._open_count = 0
            label = ordinal % self.label_count
            if self.label_owner[label] is not None:
                diag = MixingDiagnostic(
                    cycle=t,
                    label=label,
                    kind="label-reuse",
                    ordinals=(self.label_owner[label], ordinal),
                    detail="dataset claims a label whose previous dataset is still live",
                )
                self.diagnostics.append(diag)
                if self.config.enforce_min_length:
                    raise MixingError(t, label, diag.ordinals)
            self.label_owner[label] = ordinal
        ordinal = self._open_ordinal
        index = self._open_count
        self._open_count += 1
        self.buffer.append(
            _Buffered(event.value, Provenance.leaf(ordinal, index), ordinal, index, event.last)
        )
        self.accepted += 1
        self.last_valid_cycle = t
        if event.last:
            length = self._open_count
            self._dataset_meta[ordinal] = (t, length)
            if self.config.enforce_min_length and length < self.min_length:
                raise WorkloadError(
                    f"dataset {ordinal} has length {length} below the minimum "
                    f"{self.min_length} for p={self.p}, L={self.config.label_width_L}"
                )
            self._open_ordinal = None
        return (ordinal, index)

    def _route_to_pair_identifier(self, op: AdderOp, t: int) -> None:
        label = op.label
        sub = Subsum(op.result.value, op.result.prov, label, op.ordinal)
        resident = self.pi[label]
        if resident is None:
            self.pi[label] = sub
            return
        if resident.ordinal != sub.ordinal:
            diag = MixingDiagnostic(
                cycle=t,
                label=label,
                kind="pi-collision",
                ordinals=(resident.ordinal, sub.ordinal),
                detail="subsums of two datasets met in one pair-identifier slot",
            )
            self.diagnostics.append(diag)
            if self.config.enforce_min_length:
                raise MixingError(t, label, diag.ordinals)
        self.pi[label] = None
        self.fifo.append((resident, sub, label))

    def _issue_state1(self, t: int):
        if not self.buffer:
            return None
        first = self.buffer[0]
        pair_avail = len(self.buffer) > 1 and self.buffer[1].ordinal == first.ordinal
        if pair_avail:
            self.buffer.popleft()
            second = self.buffer.popleft()
            in1 = Operand(first.value, first.prov)
            in2 = Operand(second.value, second.prov)
            consumed_last = second.last
        else:
            # Lone element: pair against the identity.  Happens for the last
            # element of an odd-length dataset and for gap-starved cycles.
            self.buffer.popleft()
            in1 = Operand(first.value, first.prov)
            in2 = self._identity
            consumed_last = first.last
            if first.last:
                self._hold_state1 = True
        label = first.ordinal % self.label_count
        if consumed_last:
            self.last_consumed[label] = True
        first_of_dataset = not self.first_seen[label]
        if first_of_dataset:
            self.first_seen[label] = True
        else:
            self.counters[label] += 1
        self._finish_issue(in1, in2, label, 1, first_of_dataset, first.ordinal, t)
        self.state1_issues += 1
        return in1, in2

    def _issue_state0(self, t: int):
        if not self.fifo:
            return None
        older, newer, label = self.fifo.popleft()
        self.counters[label] -= 1
        in1 = older.operand()
        in2 = newer.operand()
        self._finish_issue(in1, in2, label, 0, False, older.ordinal, t)
        self.state0_issues += 1
        if self.first_state0_cycle is None:
            self.first_state0_cycle = t
        return in1, in2

    def _finish_issue(self, in1, in2, label, issue_state, first_of_dataset, ordinal, t):
        value = self.counters[label]
        self.counter_events.setdefault(label, []).append((t, value))
        if value > self.max_counter:
            self.max_counter = value
        if not 0 <= value <= self.counter_max_allowed:
            diag = MixingDiagnostic(
                cycle=t,
                label=label,
                kind="counter-bound",
                ordinals=(ordinal,),
                detail=f"counter {value} outside [0, {self.counter_max_allowed}]",
            )
            self.diagnostics.append(diag)
            if self.config.enforce_min_length:
                raise InternalInvariantError(str(diag))
        final = value == 0 and self.last_consumed[label]
        if final:
            self.first_seen[label] = False
            self.last_consumed[label] = False
            self.label_owner[label] = None
        result = Operand(in1.value + in2.value, in1.prov.union(in2.prov))
        self.pipe.issue(
            AdderOp(
                in1=in1,
                in2=in2,
                result=result,
                label=label,
                issue_state=issue_state,
                first_of_dataset=first_of_dataset,
                final=final,
                ordinal=ordinal,
                issue_cycle=t,
            ),
            t,
        )

    # -- run control --------------------------------------------------------

    def is_live(self) -> bool:
        return bool(
            self.buffer
            or self.pipe.in_flight
            or self.fifo
            or any(s is not None for s in self.pi)
            or any(o is not None for o in self.label_owner)
        )

    def drain(self, sink: list | None = None) -> list:
        """Step with gaps until no dataset is live; returns results emitted.

        Termination within the residency bound of the last valid input is an
        engine invariant; running past it raises.
        """
        produced = len(self.results)
        for _ in range(self.config.extra_input_stages):
            record = self.step(InputEvent.gap())
            if sink is not None:
                sink.append(record)
        if self._open_ordinal is not None:
            raise WorkloadError(
                f"cannot drain: dataset {self._open_ordinal} never received its last element"
            )
        bound = drain_residency_bound(self.p) + self.config.extra_input_stages
        while self.is_live():
            if self.last_valid_cycle is not None and self.cycle > self.last_valid_cycle + bound:
                raise InternalInvariantError(
                    f"drain did not terminate within {bound} cycles of the last valid input"
                )
            record = self.step(InputEvent.gap())
            if sink is not None:
                sink.append(record)
        return self.results[produced:]

    def counter_trace(self, label: int) -> list:
        """Per-issue history of one label's counter as (cycle, value) pairs."""
        if not 0 <= label < self.label_count:
            raise ConfigError(f"label {label} out of range for width {self.config.label_width_L}")
        return list(self.counter_events.get(label, ()))
