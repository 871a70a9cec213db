"""Independent ground truth: exact sums, provenance checks, fp error measure.

The oracle never looks inside an engine; it only sees the workload's datasets
and the emitted results.  Correctness is judged in exact mode, where addition
order cannot change the value; ieee-mode rounding differences are reported as
relative errors, never judged against a threshold.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .stream import DatasetResult
from .workload import Dataset


def oracle_sum(dataset: Dataset):
    """Plain left fold over the dataset's values."""
    total = 0
    for v in dataset.values:
        total += v
    return total


@dataclass(slots=True)
class Verdict:
    """Outcome of checking one result against its dataset."""

    ordinal: int
    passed: bool
    value_match: bool
    expected_value: object
    actual_value: object
    missing: list = field(default_factory=list)
    extra: list = field(default_factory=list)
    duplicated: list = field(default_factory=list)

    def message(self) -> str:
        if self.passed:
            return f"dataset {self.ordinal}: ok"
        parts = [f"dataset {self.ordinal}: FAIL"]
        if not self.value_match:
            parts.append(f"value {self.actual_value!r} != expected {self.expected_value!r}")
        if self.missing:
            parts.append(f"missing elements {self.missing}")
        if self.extra:
            parts.append(f"foreign/extra elements {self.extra}")
        if self.duplicated:
            parts.append(f"duplicated elements {self.duplicated}")
        return "; ".join(parts)


def verify_result(result: DatasetResult, dataset: Dataset) -> Verdict:
    """Pass iff provenance is exactly the dataset's element multiset and, in
    exact mode, the value equals the oracle sum."""
    if result.ordinal != dataset.ordinal:
        raise ValueError(f"result for dataset {result.ordinal} checked against {dataset.ordinal}")
    expected = Counter((dataset.ordinal, i) for i in range(len(dataset.values)))
    actual = result.provenance.to_counter()
    missing = sorted((expected - actual).elements())
    extra = sorted((actual - expected).elements())
    duplicated = sorted(e for e, n in actual.items() if n > 1 and expected.get(e, 0) <= 1)
    expected_value = oracle_sum(dataset)
    value_match = result.value == expected_value
    passed = not missing and not extra and not duplicated and value_match
    return Verdict(
        ordinal=dataset.ordinal,
        passed=passed,
        value_match=value_match,
        expected_value=expected_value,
        actual_value=result.value,
        missing=missing,
        extra=extra,
        duplicated=duplicated,
    )


def exact_float_sum(values) -> Fraction:
    """Exact sum of binary64 values (floats are dyadic rationals)."""
    total = Fraction(0)
    for v in values:
        total += Fraction(v)
    return total


def fp_error(result_value: float, dataset: Dataset) -> float:
    """Relative error of an ieee-mode result against the exact sum.

    |result - exact| / max(|exact|, smallest positive normal); reported only,
    never asserted against a threshold.
    """
    exact = exact_float_sum(dataset.values)
    denom = max(abs(exact), Fraction(sys.float_info.min))
    return float(abs(Fraction(result_value) - exact) / denom)
