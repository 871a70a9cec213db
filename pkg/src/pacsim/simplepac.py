"""Baseline accumulator: zero-padded startup, feedback partials, end stalls.

The first p inputs of a dataset are added to zero, creating up to p rotating
partial-sum chains; each later input is added to the partial emerging that
cycle.  After the last input the ready partials are pair-combined oldest
first until one remains; while that reduction is pending the engine refuses
new input (the caller must hold it), which is exactly the stall window the
juggling engine exists to remove.  A new dataset is admitted the cycle after
the previous dataset's final reduction has been issued.
"""

from __future__ import annotations

from collections import deque

from .arith import EXACT, Operand, Provenance, check_mode, check_value, identity
from .errors import ConfigError, InternalInvariantError
from .jugglepac import ceil_log2
from .pipeline import AdderOp, AdderPipeline
from .stream import DatasetResult, InputEvent, Subsum
from .trace import CycleRecord


class SimplePacEngine:
    """Cycle-stepped model of the baseline accumulator."""

    def __init__(self, p: int, mode: str = EXACT):
        if not isinstance(p, int) or p < 1:
            raise ConfigError(f"adder latency must be a positive integer, got {p!r}")
        check_mode(mode)
        self.p = p
        self.mode = mode
        self._identity = identity(mode)
        self.pipe = AdderPipeline(p)

        self.cycle = 0
        self._current = None  # ordinal of dataset receiving inputs
        self._input_count = 0
        self._chains = 0  # live partial-sum chains of the current dataset
        self._pending_reduction = None  # ordinal whose final issue is outstanding
        self._ready: deque = deque()  # emerged partials awaiting pairing
        self._next_ordinal = 0
        self._dataset_meta: dict = {}

        self.results: list = []
        self.accepted = 0
        self.last_valid_cycle: int | None = None
        self.input_issues = 0
        self.reduce_issues = 0
        self.recycle_issues = 0
        self.reduce_issue_cycles: list = []

    @property
    def stalled(self) -> bool:
        """True while a finished dataset's reduction blocks new input."""
        return self._pending_reduction is not None

    def step(self, event: InputEvent | None) -> CycleRecord:
        """Advance one cycle.  The caller must hold valid input while stalled."""
        t = self.cycle
        emerging = self.pipe.advance(t)
        feedback = None
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
                    label=None,
                    value=emerging.result.value,
                    provenance=emerging.result.prov,
                    completion_cycle=t,
                    last_input_cycle=last_cycle,
                )
                self.results.append(result)
                emitted = (result,)
            else:
                feedback = Subsum(emerging.result.value, emerging.result.prov, 0, emerging.ordinal)

        accepted = None
        in1 = in2 = None
        issue_state = None
        if event is not None and event.valid:
            if self.stalled:
                raise InternalInvariantError(
                    f"valid input offered at cycle {t} while the engine is stalled"
                )
            accepted, in1, in2 = self._consume_input(event, feedback, t)
            issue_state = 1
            feedback = None
        elif feedback is not None and self._inputs_open(feedback.ordinal):
            # Gap during the input phase: recycle the partial so its chain
            # keeps rotating without changing the value.
            self._issue(self._identity, feedback.operand(), feedback.ordinal, False, t)
            in1, in2 = self._identity, feedback.operand()
            issue_state = 1
            self.recycle_issues += 1
            feedback = None

        if feedback is not None:
            self._ready.append(feedback)

        if in1 is None and self._pending_reduction is not None and len(self._ready) >= 2:
            older = self._ready.popleft()
            newer = self._ready.popleft()
            self._chains -= 1
            final = self._chains == 1
            self._issue(older.operand(), newer.operand(), older.ordinal, final, t)
            in1, in2 = older.operand(), newer.operand()
            issue_state = 0
            self.reduce_issues += 1
            self.reduce_issue_cycles.append(t)
            if final:
                self._pending_reduction = None

        self.cycle = t + 1
        return CycleRecord(
            cycle=t,
            valid=accepted is not None,
            input=accepted,
            state=issue_state,
            in1=in1,
            in2=in2,
            out=out,
            out_final=out_final,
            fifo=0,
            counters=None,
            stall=False,
            emitted=emitted,
        )

    def _inputs_open(self, ordinal: int) -> bool:
        return self._current == ordinal

    def _consume_input(self, event: InputEvent, feedback: Subsum | None, t: int):
        check_value(event.value, self.mode)
        if self._current is None:
            self._current = self._next_ordinal
            self._next_ordinal += 1
            self._input_count = 0
            self._chains = 0
        ordinal = self._current
        index = self._input_count
        self._input_count += 1
        self.accepted += 1
        self.last_valid_cycle = t
        elem = Operand(event.value, Provenance.leaf(ordinal, index))

        if feedback is not None and feedback.ordinal == ordinal:
            in1, in2 = elem, feedback.operand()
        else:
            # No partial of this dataset emerges this cycle: start a chain
            # with a zero pad (always the case for the first p inputs).
            in1, in2 = elem, self._identity
            self._chains += 1

        final = False
        if event.last:
            self._dataset_meta[ordinal] = (t, self._input_count)
            self._current = None
            final = self._chains == 1 and not self._ready
            if not final:
                self._pending_reduction = ordinal
        self._issue(in1, in2, ordinal, final, t)
        self.input_issues += 1
        return (ordinal, index), in1, in2

    def _issue(self, in1: Operand, in2: Operand, ordinal: int, final: bool, t: int):
        result = Operand(in1.value + in2.value, in1.prov.union(in2.prov))
        self.pipe.issue(
            AdderOp(
                in1=in1,
                in2=in2,
                result=result,
                label=None,
                issue_state=None,
                first_of_dataset=False,
                final=final,
                ordinal=ordinal,
                issue_cycle=t,
            ),
            t,
        )

    def is_live(self) -> bool:
        return bool(self.pipe.in_flight or self._ready or self._pending_reduction is not None)

    def drain(self, sink: list | None = None) -> list:
        """Step without input until every dataset's final result has emerged."""
        produced = len(self.results)
        bound = (2 + ceil_log2(self.p)) * self.p + 8
        start = self.cycle
        while self.is_live():
            if self.cycle > start + bound + self.p:
                raise InternalInvariantError(
                    f"baseline drain did not terminate within {bound + self.p} cycles"
                )
            record = self.step(None)
            if sink is not None:
                sink.append(record)
        return self.results[produced:]
