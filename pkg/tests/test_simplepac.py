"""Baseline engine: the reference schedule's left half and stall behavior."""

import random

import pytest

from pacsim import (
    InternalInvariantError,
    SimplePacEngine,
    WorkloadSpec,
    events_for_lengths,
    expand,
    oracle_sum,
    run_simplepac,
    verify_result,
)
from pacsim.stream import InputEvent
from pacsim.trace import element_name, operand_name

from conftest import TABLE_SIMPLEPAC


class TestReferenceSchedule:
    def test_cells_match_transcription(self, table1_simplepac_run):
        result, _ = table1_simplepac_run
        for record, expected in zip(result.records[:14], TABLE_SIMPLEPAC):
            input_cell = "Stall" if record.stall else element_name(record.input)
            got = (
                input_cell,
                operand_name(record.in1),
                operand_name(record.in2),
                operand_name(record.out),
            )
            assert got == expected, f"cycle {record.cycle}: {got} != {expected}"

    def test_first_feedback_cycle(self, table1_simplepac_run):
        result, _ = table1_simplepac_run
        rec = result.records[3]
        assert operand_name(rec.in1) == "a_3"
        assert operand_name(rec.in2) == "a_0"
        assert operand_name(rec.out) == "a_0"

    def test_stall_window_is_cycles_6_to_10(self, table1_simplepac_run):
        result, _ = table1_simplepac_run
        stalls = [r.cycle for r in result.records if r.stall]
        assert stalls == [6, 7, 8, 9, 10]

    def test_reduction_issues_at_7_and_10(self, table1_simplepac_run):
        result, _ = table1_simplepac_run
        assert result.engine.reduce_issue_cycles[:2] == [7, 10]

    def test_final_emerges_at_cycle_13(self, table1_simplepac_run):
        result, _ = table1_simplepac_run
        res = result.results[0]
        assert res.completion_cycle == 13
        assert res.last_input_cycle == 5
        assert operand_name(result.records[13].out) == "a_{0:5}"

    def test_next_dataset_admitted_cycle_after_final_reduction(self, table1_simplepac_run):
        result, _ = table1_simplepac_run
        rec11 = result.records[11]
        assert rec11.valid and element_name(rec11.input) == "b_0"


class TestStructure:
    def test_length_p_dataset(self):
        # p zero-padded issues, p-1 reduction issues, exact result.
        p = 5
        events, datasets = events_for_lengths([p])
        result = run_simplepac(p, events)
        engine = result.engine
        assert engine.input_issues == p
        assert engine.reduce_issues == p - 1
        assert result.results[0].value == oracle_sum(datasets[0])

    def test_reduction_count_is_p_minus_1_for_long_datasets(self):
        p = 4
        events, _ = events_for_lengths([17])
        result = run_simplepac(p, events)
        assert result.engine.reduce_issues == p - 1

    def test_single_dataset_never_stalls(self):
        events, _ = events_for_lengths([12])
        result = run_simplepac(3, events)
        assert result.stats.stall_cycles == 0

    @pytest.mark.parametrize("p", [2, 3, 5, 14])
    def test_back_to_back_stall_positive_for_p_at_least_2(self, p):
        events, _ = events_for_lengths([max(p, 4)] * 3)
        result = run_simplepac(p, events, trace=False)
        assert result.stats.stall_cycles > 0

    def test_p1_is_the_degenerate_serial_accumulator(self):
        # With a single-cycle adder the feedback loop closes every cycle, so
        # the baseline never needs a reduction stall.
        events, _ = events_for_lengths([6, 6, 6])
        result = run_simplepac(1, events, trace=False)
        assert result.stats.stall_cycles == 0

    def test_refuses_valid_input_while_stalled(self):
        events, _ = events_for_lengths([4])
        engine = SimplePacEngine(2)
        for ev in events:
            engine.step(ev)
        assert engine.stalled
        with pytest.raises(InternalInvariantError):
            engine.step(InputEvent.element(9))


class TestRandomWorkloads:
    def test_exact_sums_across_shapes(self):
        for k in range(25):
            rng = random.Random(k)
            p = rng.choice([1, 2, 3, 5, 14])
            spec = WorkloadSpec(
                seed=k,
                count=rng.randint(1, 5),
                length_range=(1, 40),
                gap_probability=0.08,
            )
            events, datasets = expand(spec)
            result = run_simplepac(p, events, trace=False)
            assert len(result.results) == len(datasets)
            for res in result.results:
                verdict = verify_result(res, datasets[res.ordinal])
                assert verdict.passed, (k, p, verdict.message())

    def test_single_element_dataset(self):
        events, datasets = events_for_lengths([1])
        result = run_simplepac(3, events)
        assert result.results[0].value == oracle_sum(datasets[0])
        assert result.stats.stall_cycles == 0
