import csv
import json

import pytest

from lbsim.cli import main


@pytest.fixture
def config_path(tmp_path):
    payload = {"n_servers": 8, "n_tasks": 60, "scheduler": "awlc", "seed": 5}
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(payload))
    return path


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_run_writes_csvs_and_summary(config_path, tmp_path, capsys):
    out = tmp_path / "results"
    rc = main(["run", "--config", str(config_path), "--out", str(out)])
    assert rc == 0
    assert (out / "per_server.csv").exists()
    assert (out / "summary.csv").exists()
    rows = read_rows(out / "summary.csv")
    assert len(rows) == 2  # header + one replication
    assert rows[1][0] == "awlc"
    stdout = capsys.readouterr().out
    assert "stddev" in stdout and "awlc" in stdout


def test_run_is_byte_identical_across_invocations(config_path, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--config", str(config_path), "--out", str(out1)]) == 0
    assert main(["run", "--config", str(config_path), "--out", str(out2)]) == 0
    for name in ("per_server.csv", "summary.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_run_scheduler_and_seed_overrides(config_path, tmp_path):
    out = tmp_path / "o"
    rc = main([
        "run", "--config", str(config_path), "--scheduler", "lc",
        "--seed", "9", "--replications", "3", "--out", str(out),
    ])
    assert rc == 0
    rows = read_rows(out / "summary.csv")
    assert len(rows) == 4
    assert [r[0] for r in rows[1:]] == ["lc", "lc", "lc"]
    assert [r[2] for r in rows[1:]] == ["9", "10", "11"]


def test_run_missing_config_names_path(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    rc = main(["run", "--config", str(missing), "--out", str(tmp_path / "x")])
    assert rc == 1
    assert "nope.json" in capsys.readouterr().err


def test_run_unknown_key_fails(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n_taskss": 10}')
    rc = main(["run", "--config", str(bad), "--out", str(tmp_path / "x")])
    assert rc == 1
    assert "n_taskss" in capsys.readouterr().err


def test_compare_emits_verdicts_and_csvs(config_path, tmp_path, capsys):
    out = tmp_path / "cmp"
    rc = main([
        "compare", "--config", str(config_path), "--replications", "5", "--out", str(out),
    ])
    assert rc == 0
    rows = read_rows(out / "comparison.csv")
    assert rows[0] == ["scheduler", "n_tasks", "seed", "mean", "stddev"]
    assert len(rows) == 1 + 3 * 5
    assert {r[0] for r in rows[1:]} == {"lc", "wlc", "awlc"}
    series = read_rows(out / "plot_series.csv")
    assert series[0] == ["scheduler", "rank", "server", "makespan"]
    assert len(series) == 1 + 3 * 8
    stdout = capsys.readouterr().out
    assert "lowest median stddev" in stdout
    assert "lowest median mean" in stdout


def test_compare_plot_series_sorted(config_path, tmp_path):
    out = tmp_path / "cmp"
    assert main(["compare", "--config", str(config_path), "--replications", "2", "--out", str(out)]) == 0
    series = read_rows(out / "plot_series.csv")[1:]
    per_sched = {}
    for sched, rank, server, makespan in series:
        per_sched.setdefault(sched, []).append(float(makespan))
    for values in per_sched.values():
        assert values == sorted(values)


def test_replay_logs_each_record(config_path, tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    trace.write_text(
        "# recorded rates\n"
        '{"t":0.0,"server":0,"vc":0.8,"vm":0.3}\n'
        '{"t":1.0,"server":1,"vc":0.5,"vm":0.5}\n'
        '{"t":2.0,"server":0,"vc":0.9,"vm":0.9}\n'
    )
    rc = main(["replay", "--config", str(config_path), "--telemetry", str(trace)])
    assert rc == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("t=")]
    assert len(lines) == 3
    assert "weight=0.600000" in lines[0]  # 0.6*0.8 + 0.4*0.3
    assert "weight=0.500000" in lines[1]


def test_replay_rejects_zero_rate_with_line_number(config_path, tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    trace.write_text(
        '{"t":0.0,"server":0,"vc":0.8,"vm":0.3}\n'
        '{"t":1.0,"server":0,"vc":0.0,"vm":0.5}\n'
    )
    rc = main(["replay", "--config", str(config_path), "--telemetry", str(trace)])
    assert rc == 1
    assert "line 2" in capsys.readouterr().err


def test_replay_rejects_non_monotonic_time(config_path, tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    trace.write_text(
        '{"t":5.0,"server":0,"vc":0.8,"vm":0.3}\n'
        '{"t":1.0,"server":0,"vc":0.8,"vm":0.3}\n'
    )
    rc = main(["replay", "--config", str(config_path), "--telemetry", str(trace)])
    assert rc == 1
    assert "non-monotonic time" in capsys.readouterr().err


def test_replay_rejects_unknown_server(config_path, tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    trace.write_text('{"t":0.0,"server":99,"vc":0.8,"vm":0.3}\n')
    rc = main(["replay", "--config", str(config_path), "--telemetry", str(trace)])
    assert rc == 1
    assert "99" in capsys.readouterr().err


def test_replay_missing_trace_file(config_path, tmp_path, capsys):
    rc = main(["replay", "--config", str(config_path), "--telemetry", str(tmp_path / "none.jsonl")])
    assert rc == 1
    assert "none.jsonl" in capsys.readouterr().err
