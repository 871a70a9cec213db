"""Shared fixtures: the hand-transcribed p=3 reference schedule and helpers.

The two TABLE_* transcriptions below are the ground truth both engines must
reproduce cycle-exactly for back-to-back datasets a (length 6) and b
(length 8) with an adder latency of 3.  Cells are (input, in1, in2, out);
empty string means a blank cell.
"""

import pytest

from pacsim import EngineConfig, events_for_lengths, run_jugglepac, run_simplepac

# Right half: the juggling engine.
TABLE_JUGGLEPAC = [
    ("a_0", "", "", ""),
    ("a_1", "a_0", "a_1", ""),
    ("a_2", "", "", ""),
    ("a_3", "a_2", "a_3", ""),
    ("a_4", "", "", "a_{0,1}"),
    ("a_5", "a_4", "a_5", ""),
    ("b_0", "a_{0,1}", "a_{2,3}", "a_{2,3}"),
    ("b_1", "b_0", "b_1", ""),
    ("b_2", "", "", "a_{4,5}"),
    ("b_3", "b_2", "b_3", "a_{0:3}"),
    ("b_4", "a_{4,5}", "a_{0:3}", "b_{0,1}"),
    ("b_5", "b_4", "b_5", ""),
    ("b_6", "b_{0,1}", "b_{2,3}", "b_{2,3}"),
    ("b_7", "b_6", "b_7", "a_{0:5}"),
]

# Left half: the baseline with its stall window.
TABLE_SIMPLEPAC = [
    ("a_0", "a_0", "0", ""),
    ("a_1", "a_1", "0", ""),
    ("a_2", "a_2", "0", ""),
    ("a_3", "a_3", "a_0", "a_0"),
    ("a_4", "a_4", "a_1", "a_1"),
    ("a_5", "a_5", "a_2", "a_2"),
    ("Stall", "", "", "a_{0,3}"),
    ("Stall", "a_{0,3}", "a_{1,4}", "a_{1,4}"),
    ("Stall", "", "", "a_{2,5}"),
    ("Stall", "", "", ""),
    ("Stall", "a_{2,5}", "a_{0,1,3,4}", "a_{0,1,3,4}"),
    ("b_0", "b_0", "0", ""),
    ("b_1", "b_1", "0", ""),
    ("b_2", "b_2", "0", ""),
]
TABLE_SIMPLEPAC[13] = ("b_2", "b_2", "0", "a_{0:5}")


@pytest.fixture(scope="session")
def table1_jugglepac_run():
    events, datasets = events_for_lengths([6, 8])
    result = run_jugglepac(EngineConfig(adder_latency_p=3, label_width_L=2), events)
    return result, datasets


@pytest.fixture(scope="session")
def table1_simplepac_run():
    events, datasets = events_for_lengths([6, 8])
    result = run_simplepac(3, events)
    return result, datasets
