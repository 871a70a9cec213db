"""Data types flowing between the workload generator, engines, and trace layer."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Operand, Provenance
from .errors import ConfigError


@dataclass(slots=True, frozen=True)
class InputEvent:
    """One cycle on the input port: either a valid element or a gap."""

    valid: bool
    value: object = None
    last: bool = False

    @staticmethod
    def element(value, last: bool = False) -> "InputEvent":
        return InputEvent(True, value, last)

    @staticmethod
    def gap() -> "InputEvent":
        return InputEvent(False)

    def __post_init__(self):
        if not self.valid and (self.value is not None or self.last):
            raise ConfigError("an invalid input event carries no value and no last flag")


GAP = InputEvent.gap()


@dataclass(slots=True)
class Subsum:
    """A partial sum tagged with its dataset's label."""

    value: object
    prov: Provenance
    label: int
    ordinal: int

    def operand(self) -> Operand:
        return Operand(self.value, self.prov)


@dataclass(slots=True)
class DatasetResult:
    """A completed accumulation as emitted by an engine."""

    ordinal: int
    label: int | None
    value: object
    provenance: Provenance
    completion_cycle: int
    last_input_cycle: int

    @property
    def drain_latency(self) -> int:
        return self.completion_cycle - self.last_input_cycle


@dataclass(slots=True)
class MixingDiagnostic:
    """Recorded evidence of two datasets sharing a label while live."""

    cycle: int
    label: int
    kind: str  # "pi-collision" | "label-reuse" | "counter-bound"
    ordinals: tuple = field(default_factory=tuple)
    detail: str = ""
