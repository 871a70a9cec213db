"""Exception hierarchy shared by the simulator modules.

ConfigError and WorkloadError map to CLI exit code 2 (usage problems);
EngineError and its subclasses map to exit code 1 (a run that started but
violated a contract).
"""


class PacsimError(Exception):
    """Base class for all simulator errors."""


class ConfigError(PacsimError):
    """Invalid engine or arithmetic configuration."""


class WorkloadError(PacsimError):
    """A workload violates its declared constraints (e.g. minimum length)."""


class EngineError(PacsimError):
    """A running engine hit a hard fault."""


class FifoOverflowError(EngineError):
    """Ready-pair FIFO exceeded its capacity.

    Can only happen when the minimum-dataset-length contract was violated,
    so the message names the offending cycle and label.
    """

    def __init__(self, cycle: int, label: int, capacity: int):
        self.cycle = cycle
        self.label = label
        self.capacity = capacity
        super().__init__(
            f"FIFO overflow at cycle {cycle} on label {label} "
            f"(capacity {capacity}); minimum dataset length constraint violated"
        )


class MixingError(EngineError):
    """Two live datasets collided on one label while enforcement was on."""

    def __init__(self, cycle: int, label: int, ordinals: tuple):
        self.cycle = cycle
        self.label = label
        self.ordinals = ordinals
        super().__init__(
            f"dataset mixing at cycle {cycle} on label {label}: "
            f"datasets {ordinals} are simultaneously live"
        )


class InternalInvariantError(PacsimError):
    """The simulator broke one of its own structural invariants (a bug)."""
