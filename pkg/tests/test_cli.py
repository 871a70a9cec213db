"""Command-line behavior: schedules, exit codes, files, determinism."""

import csv
import json
from pathlib import Path

from pacsim.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSchedule:
    def test_schedule_prints_reference_table(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--engine", "jugglepac", "-p", "3", "-L", "2",
                               "--datasets", "6,8", "--schedule", "--cycles", "14")
        assert code == 0
        assert out == (GOLDEN / "schedule_jugglepac_p3.txt").read_text()

    def test_schedule_subcommand_defaults_to_p3_demo(self, capsys):
        code, out, _ = run_cli(capsys, "schedule", "--cycles", "14")
        assert code == 0
        assert out == (GOLDEN / "schedule_jugglepac_p3.txt").read_text()

    def test_simplepac_schedule(self, capsys):
        code, out, _ = run_cli(capsys, "schedule", "--engine", "simplepac", "--cycles", "14")
        assert code == 0
        assert out == (GOLDEN / "schedule_simplepac_p3.txt").read_text()


class TestExitCodes:
    def test_short_dataset_under_enforcement_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "run", "--datasets", "3")
        assert code == 2
        assert "minimum" in err

    def test_no_workload_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "run")
        assert code == 2

    def test_verify_clean_run_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "-p", "14", "-L", "1",
                               "--random", "10", "--seed", "7", "--gap-prob", "0.05")
        assert code == 0
        assert out.startswith("PASS")

    def test_verify_empty_workload_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--random", "0")
        assert code == 0
        assert "0 datasets" in out

    def test_verify_adversarial_mixing_exits_one(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "-p", "14", "-L", "1", "--no-enforce",
                               "--datasets", "10,10,10,10,10,10,10,10")
        assert code == 1
        assert "FAIL" in out
        assert "mixing" in out or "provenance" in out or "FAIL" in out

    def test_verify_rejects_ieee_mode(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--mode", "ieee", "--random", "1")
        assert code == 2


class TestRunFiles:
    def test_run_writes_trace_and_stats(self, capsys, tmp_path):
        trace = tmp_path / "trace.csv"
        stats = tmp_path / "stats.csv"
        jsonl = tmp_path / "trace.jsonl"
        code, out, _ = run_cli(
            capsys, "run", "-p", "3", "-L", "2", "--datasets", "6,8",
            "--trace-csv", str(trace), "--trace-jsonl", str(jsonl),
            "--stats-csv", str(stats),
        )
        assert code == 0
        rows = list(csv.reader(trace.open()))
        assert rows[0][0] == "cycle"
        assert len(rows) > 14
        assert any(json.loads(line)["out"] == "a_{0:5}" for line in jsonl.open())
        stat_rows = dict((r[0], r[1]) for r in list(csv.reader(stats.open()))[1:])
        assert stat_rows["stall_cycles"] == "0"
        assert stat_rows["drain_latency_0"] == "8"

    def test_same_seed_same_files(self, capsys, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        for path in (out1, out2):
            code, _, _ = run_cli(
                capsys, "run", "-p", "5", "-L", "2", "--random", "6",
                "--seed", "42", "--gap-prob", "0.05", "--trace-csv", str(path),
            )
            assert code == 0
        assert out1.read_text() == out2.read_text()

    def test_flag_overrides_workload_file_with_warning(self, capsys, tmp_path):
        wl = tmp_path / "wl.json"
        wl.write_text(json.dumps({"seed": 1, "datasets": [{"length": 30}, {"length": 30}]}))
        code, _, err = run_cli(capsys, "run", "-p", "3", "-L", "2",
                               "--workload", str(wl), "--seed", "9")
        assert code == 0
        assert "overrides" in err


class TestSweep:
    def test_p14_min_length_column(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--p-list", "14", "--L-list", "1,2,3,4")
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert rows[0] == ["p", "L", "min_length", "max_fifo", "max_counter", "worst_drain_latency"]
        assert [r[2] for r in rows[1:]] == ["74", "25", "11", "5"]

    def test_p3_l1_min_length(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--p-list", "3", "--L-list", "1")
        rows = list(csv.reader(out.splitlines()))
        assert rows[1][2] == "13"

    def test_cells_respect_fifo_bound(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--p-list", "2,3,5,14", "--L-list", "1,2,3,4")
        assert code == 0
        from pacsim import ceil_log2
        for row in list(csv.reader(out.splitlines()))[1:]:
            p, _, _, max_fifo = int(row[0]), row[1], row[2], int(row[3])
            assert max_fifo <= ceil_log2(p)


class TestCompare:
    def test_reference_workload_stall_difference(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "-p", "3", "-L", "2", "--datasets", "6,8")
        assert code == 0
        lines = {line.split()[0] + " " + line.split()[1]: line.split()[2:]
                 for line in out.splitlines()[1:] if line.split()}
        assert lines["stall cycles"] == ["0", "5"]

    def test_single_dataset_no_stall_difference(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "-p", "3", "-L", "2", "--datasets", "8")
        assert code == 0
        stall_line = [l for l in out.splitlines() if l.startswith("stall cycles")][0]
        assert stall_line.split()[2:] == ["0", "0"]

    def test_fifty_min_length_datasets_p14(self, capsys):
        lengths = ",".join(["25"] * 50)
        code, out, _ = run_cli(capsys, "compare", "-p", "14", "-L", "2", "--datasets", lengths)
        assert code == 0
        total_line = [l for l in out.splitlines() if l.startswith("total cycles")][0]
        juggle, simple = (int(x) for x in total_line.split()[2:])
        assert juggle < simple
