"""Opaque latency-p pipelined adder model shared by both accumulator engines.

The adder is a black box: an operation issued at cycle t produces exactly one
result at cycle t + p.  Internal stages (alignment, normalization) are not
modeled.  Each in-flight operation carries the metadata the engines stamped at
issue time (label, issuing state, first/final flags), which stands in for the
matching shift register of the real circuit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .arith import Operand
from .errors import ConfigError, InternalInvariantError


@dataclass(slots=True)
class AdderOp:
    """One addition in flight, with its issue-time metadata."""

    in1: Operand
    in2: Operand
    result: Operand
    label: int | None
    issue_state: int | None  # 1 = raw-input addition, 0 = subsum addition, None = other
    first_of_dataset: bool
    final: bool
    ordinal: int | None
    issue_cycle: int


class AdderPipeline:
    """FIFO of in-flight operations, at most one issued per cycle.

    advance() must be called once per cycle before any issue for that cycle;
    a result emerging at cycle t may then be consumed as an adder input in the
    same cycle (same-cycle forwarding).
    """

    def __init__(self, latency: int):
        if not isinstance(latency, int) or latency < 1:
            raise ConfigError(f"adder latency must be a positive integer, got {latency!r}")
        self.latency = latency
        self._inflight: deque = deque()  # (emerge_cycle, AdderOp), ascending
        self._last_issue_cycle: int | None = None
        self.issued = 0
        self.emerged = 0

    @property
    def in_flight(self) -> int:
        return len(self._inflight)

    def advance(self, cycle: int) -> AdderOp | None:
        """Return the op emerging this cycle, if any."""
        if self._inflight:
            emerge_cycle, op = self._inflight[0]
            if emerge_cycle < cycle:
                raise InternalInvariantError(
                    f"missed emergence: op due at {emerge_cycle}, now at {cycle}"
                )
            if emerge_cycle == cycle:
                self._inflight.popleft()
                self.emerged += 1
                return op
        return None

    def issue(self, op: AdderOp, cycle: int) -> None:
        if self._last_issue_cycle is not None and cycle <= self._last_issue_cycle:
            raise InternalInvariantError(f"more than one issue at cycle {cycle}")
        self._last_issue_cycle = cycle
        self._inflight.append((cycle + self.latency, op))
        self.issued += 1
        if len(self._inflight) > self.latency:
            raise InternalInvariantError(
                f"{len(self._inflight)} ops in flight exceeds latency {self.latency}"
            )

    def step(self, cycle: int, op: AdderOp | None = None) -> AdderOp | None:
        """Advance one cycle, optionally issuing; returns the emerging op."""
        out = self.advance(cycle)
        if op is not None:
            self.issue(op, cycle)
        return out
