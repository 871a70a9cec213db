"""Deterministic workload construction.

A WorkloadSpec expands to a per-cycle stream of input events plus the dataset
metadata the oracle checks against.  Expansion is a pure function of the
spec: the generator is Python's Mersenne Twister (`random.Random`), whose
sequence is stable across Python versions, so equal specs always produce
bit-identical streams.

Workload files are JSON:

    {
      "seed": 42,
      "count": 3,
      "lengths": [74, 80, 74],            # or "length_range": [74, 200]
      "datasets": [{"length": 6}, {"length": 8, "values": [1, 2, ...]}],
      "values": {"policy": "uniform", "range": [-2147483648, 2147483648]},
      "gaps": {"probability": 0.05, "between": 0}
    }

`datasets` (explicit) wins over `lengths`, which wins over `length_range`;
values are generated from the seed when absent.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .arith import EXACT, IEEE, check_mode
from .errors import ConfigError, WorkloadError
from .stream import InputEvent

VALUE_POLICIES = ("uniform", "indexed")
DEFAULT_VALUE_RANGE = (-(2**31), 2**31)


@dataclass(slots=True)
class Dataset:
    """One delimited input sequence, as the oracle sees it."""

    ordinal: int
    values: list

    @property
    def length(self) -> int:
        return len(self.values)


@dataclass(slots=True)
class WorkloadSpec:
    seed: int = 0
    count: int = 0
    lengths: list | None = None  # explicit per-dataset lengths
    length_range: tuple | None = None  # uniform inclusive range
    all_min: bool = False  # every dataset at the active minimum length
    explicit_values: list | None = None  # list of per-dataset value lists
    value_policy: str = "uniform"
    value_range: tuple = DEFAULT_VALUE_RANGE
    exponent_spread: int = 0  # ieee only: scatter magnitudes by 2^+-k
    gap_probability: float = 0.0
    gap_between: int = 0  # fixed gap cycles between datasets
    mode: str = EXACT

    def __post_init__(self):
        check_mode(self.mode)
        if self.value_policy not in VALUE_POLICIES:
            raise ConfigError(f"unknown value policy {self.value_policy!r}")
        if not 0.0 <= self.gap_probability < 1.0:
            raise ConfigError("gap probability must be in [0, 1)")
        if self.gap_between < 0:
            raise ConfigError("gap_between must be non-negative")
        if self.exponent_spread < 0:
            raise ConfigError("exponent_spread must be non-negative")


def _dataset_lengths(spec: WorkloadSpec, rng: random.Random, minimum: int | None) -> list:
    if spec.explicit_values is not None:
        return [len(vals) for vals in spec.explicit_values]
    if spec.lengths is not None:
        return list(spec.lengths)
    if spec.all_min:
        if minimum is None:
            raise ConfigError("all_min workloads need the active minimum length")
        return [minimum] * spec.count
    if spec.length_range is not None:
        lo, hi = spec.length_range
        return [rng.randint(lo, hi) for _ in range(spec.count)]
    raise ConfigError("workload spec fixes no dataset lengths")


def _dataset_values(spec: WorkloadSpec, rng: random.Random, lengths: list) -> list:
    if spec.explicit_values is not None:
        out = list(spec.explicit_values)
    elif spec.value_policy == "indexed":
        out = [[i + 1 for i in range(n)] for n in lengths]
    else:
        lo, hi = spec.value_range
        out = [[rng.randrange(lo, hi) for _ in range(n)] for n in lengths]
    if spec.mode == IEEE:
        spread = spec.exponent_spread
        out = [
            [float(v) * 2.0 ** rng.randint(-spread, spread) if spread else float(v) for v in vals]
            for vals in out
        ]
    return out


def expand(spec: WorkloadSpec, minimum_length: int | None = None, enforce: bool = False):
    """Expand a spec into (events, datasets).

    One event per cycle; `last` is set on each dataset's final element; gaps
    appear as invalid events.  With `enforce`, any dataset shorter than
    `minimum_length` rejects the whole workload, naming the offender.
    """
    rng = random.Random(spec.seed)
    lengths = _dataset_lengths(spec, rng, minimum_length)
    for i, n in enumerate(lengths):
        if n < 1:
            raise WorkloadError(f"dataset {i} has non-positive length {n}")
        if enforce and minimum_length is not None and n < minimum_length:
            raise WorkloadError(
                f"dataset {i} has length {n} below the minimum {minimum_length}"
            )
    value_lists = _dataset_values(spec, rng, lengths)

    events = []
    datasets = []
    gap_p = spec.gap_probability
    for ordinal, values in enumerate(value_lists):
        datasets.append(Dataset(ordinal=ordinal, values=list(values)))
        if ordinal and spec.gap_between:
            events.extend(InputEvent.gap() for _ in range(spec.gap_between))
        last_index = len(values) - 1
        for i, v in enumerate(values):
            while gap_p and rng.random() < gap_p:
                events.append(InputEvent.gap())
            events.append(InputEvent.element(v, last=(i == last_index)))
    return events, datasets


def events_for_lengths(lengths, mode: str = EXACT):
    """Back-to-back datasets of the given lengths with indexed values."""
    spec = WorkloadSpec(count=len(lengths), lengths=list(lengths), value_policy="indexed", mode=mode)
    return expand(spec)


# -- workload files -----------------------------------------------------------

def load_workload(path) -> WorkloadSpec:
    with open(path, "r", encoding="utf-8") as fp:
        doc = json.load(fp)
    return spec_from_dict(doc)


def spec_from_dict(doc: dict) -> WorkloadSpec:
    if not isinstance(doc, dict):
        raise WorkloadError("workload document must be a JSON object")
    known = {
        "seed", "count", "lengths", "length_range", "all_min",
        "datasets", "values", "gaps", "mode",
    }
    unknown = set(doc) - known
    if unknown:
        raise WorkloadError(f"unknown workload fields: {sorted(unknown)}")
    explicit_values = None
    lengths = doc.get("lengths")
    if "datasets" in doc:
        ds = doc["datasets"]
        if any("values" in d for d in ds):
            if not all("values" in d for d in ds):
                raise WorkloadError("either all datasets carry values or none do")
            explicit_values = [list(d["values"]) for d in ds]
            lengths = None
        else:
            lengths = [int(d["length"]) for d in ds]
    values = doc.get("values", {})
    gaps = doc.get("gaps", {})
    spec = WorkloadSpec(
        seed=int(doc.get("seed", 0)),
        count=int(doc.get("count", len(lengths) if lengths else 0)),
        lengths=lengths,
        length_range=tuple(doc["length_range"]) if "length_range" in doc else None,
        all_min=bool(doc.get("all_min", False)),
        explicit_values=explicit_values,
        value_policy=values.get("policy", "uniform"),
        value_range=tuple(values.get("range", DEFAULT_VALUE_RANGE)),
        exponent_spread=int(values.get("exponent_spread", 0)),
        gap_probability=float(gaps.get("probability", 0.0)),
        gap_between=int(gaps.get("between", 0)),
        mode=doc.get("mode", EXACT),
    )
    if spec.lengths is not None:
        spec.count = len(spec.lengths)
    if spec.explicit_values is not None:
        spec.count = len(spec.explicit_values)
    return spec
