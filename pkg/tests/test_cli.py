import json

import pytest

from irqbench import trace
from irqbench.cli import CliError, main, parse_duration, parse_seeds


def test_parse_duration_units():
    assert parse_duration("30s") == 30_000_000_000
    assert parse_duration("250ms") == 250_000_000
    assert parse_duration("45us") == 45_000
    assert parse_duration("500ns") == 500
    assert parse_duration("1234") == 1234
    assert parse_duration(" 2 s ") == 2_000_000_000
    with pytest.raises(CliError):
        parse_duration("fast")
    with pytest.raises(CliError):
        parse_duration("3.5s")


def test_parse_seeds():
    assert parse_seeds("0..9") == list(range(10))
    assert parse_seeds("4..4") == [4]
    assert parse_seeds("1,5,9") == [1, 5, 9]
    assert parse_seeds("7") == [7]
    with pytest.raises(CliError):
        parse_seeds("9..1")
    with pytest.raises(CliError):
        parse_seeds("a..b")


def test_run_then_analyze_roundtrip(tmp_path, capsys):
    trace_path = tmp_path / "t2.itrc"
    report_path = tmp_path / "report.json"
    csv_path = tmp_path / "samples.csv"
    assert main(["run", "T2", "--mode", "latency", "--seed", "3",
                 "--duration", "500ms", "--scale", "1000",
                 "-o", str(trace_path)]) == 0
    assert trace_path.exists()
    assert main(["analyze", str(trace_path), "-o", str(report_path),
                 "--csv", str(csv_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["schema_version"] == 1
    assert report["scenario"] == "T2"
    assert report["mode"] == "latency"
    assert report["count"] == 100
    assert report["misses"] == 0
    assert 200 <= report["median"] <= 264
    assert csv_path.read_text().count("\n") == 101
    out = capsys.readouterr().out
    assert "100 phases" in out
    assert "median" in out


def test_analyze_infers_mode_and_rejects_mismatch(tmp_path, capsys):
    trace_path = tmp_path / "t.itrc"
    assert main(["run", "T2", "--mode", "throughput", "--seed", "0",
                 "--duration", "20s", "--scale", "100000",
                 "-o", str(trace_path)]) == 0
    report_path = tmp_path / "r.json"
    assert main(["analyze", str(trace_path), "-o", str(report_path)]) == 0
    assert json.loads(report_path.read_text())["unit"] == "Hz"
    assert main(["analyze", str(trace_path), "--mode", "latency",
                 "-o", str(report_path)]) == 2
    assert "throughput mode" in capsys.readouterr().err


def test_unknown_scenario_lists_valid_names(tmp_path, capsys):
    assert main(["run", "T99"]) == 2
    err = capsys.readouterr().err
    assert "T99" in err
    assert "B-Tmax" in err


def test_mode_unavailable_for_scenario(capsys):
    assert main(["run", "T3", "--mode", "throughput"]) == 2
    assert "latency" in capsys.readouterr().err


def test_missing_trace_file_is_a_runtime_error(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "nope.itrc")]) == 1


def test_corrupt_trace_is_a_runtime_error(tmp_path, capsys):
    bad = tmp_path / "bad.itrc"
    bad.write_bytes(b"XXXX" + b"\x00" * 20)
    assert main(["analyze", str(bad)]) == 1
    assert "magic" in capsys.readouterr().err


def test_bench_writes_reports_and_comparison(tmp_path, capsys):
    out_dir = tmp_path / "bench"
    assert main(["bench", "B-Lmin", "--seeds", "0..1",
                 "--duration", "250ms", "--out-dir", str(out_dir)]) == 0
    agg = json.loads((out_dir / "B-Lmin" / "aggregate.json").read_text())
    assert agg["benchmark"] == "B-Lmin"
    assert agg["constituents"] == ["T2"]
    assert agg["unit"] == "ns"
    assert agg["seeds"] == [0, 1]
    assert set(agg["stacks"]) == {"bare-metal", "rtos"}
    for stack in agg["stacks"].values():
        assert stack["count"] == 100
        assert 200 <= stack["median"] <= 264
    per_run = json.loads(
        (out_dir / "B-Lmin" / "bare-metal-seed0.json").read_text())
    assert per_run["metadata"]["benchmark"] == "B-Lmin"
    table = (out_dir / "comparison.csv").read_text().splitlines()
    assert table[0].startswith("benchmark,mode,unit,median[bare-metal]")
    assert table[1].startswith("B-Lmin,latency,ns,")
    out = capsys.readouterr().out
    assert "B-Lmin" in out


def test_bench_rejects_unknown_name(capsys):
    assert main(["bench", "B-Nope"]) == 2


def test_export_csv(tmp_path, capsys):
    trace_path = tmp_path / "t.itrc"
    main(["run", "T2", "--seed", "1", "--duration", "50ms",
          "-o", str(trace_path)])
    events_csv = tmp_path / "events.csv"
    assert main(["export-csv", str(trace_path), "-o",
                 str(events_csv)]) == 0
    lines = events_csv.read_text().splitlines()
    capture = trace.read_file(str(trace_path))
    assert len(lines) == len(capture.events) + 1


def test_benchmark_trace_can_be_produced_by_run(tmp_path):
    out = tmp_path / "lmax.itrc"
    assert main(["run", "B-Lmax", "--parallel-cores", "2", "--seed", "0",
                 "--duration", "100ms", "-o", str(out)]) == 0
    meta = trace.read_file(str(out)).metadata
    assert meta["scenario"] == "B-Lmax"
    assert meta["config"]["cores"] == 2
