import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from minifp import (KernelConfig, V2, error_metric, get_kernel, new_context,
                    reference_output, run_kernel)
from minifp.kernels import generate_input
from minifp.report import parse, parse_stats


def run_cli(*args, expect=0):
    proc = subprocess.run([sys.executable, "-m", "minifp", *args],
                          capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr
    return proc


def test_run_matches_golden_stdout(golden_dir):
    proc = run_cli("run", "--kernel", "conv", "--size", "8", "--seed", "0")
    want = (Path(golden_dir) / "conv_s0_n8_run.txt").read_text()
    assert proc.stdout == want


def test_run_stdout_parses_back_losslessly():
    proc = run_cli("run", "--kernel", "dwt", "--size", "16", "--seed", "4")
    values = np.array([float(line) for line in proc.stdout.split()])
    spec = get_kernel("dwt")
    inp = generate_input("dwt", 4, 16)
    want = reference_output(spec, inp)
    assert np.array_equal(values, want)


def test_run_zero_iteration_jacobi_echoes_grid():
    proc = run_cli("run", "--kernel", "jacobi", "--size", "8", "--seed", "3",
                   "--param", "iters=0")
    values = [float(line) for line in proc.stdout.split()]
    inp = generate_input("jacobi", 3, 8)
    assert values == list(inp.arrays["grid"].reshape(-1))


def test_run_with_precision_file(tmp_path):
    prec = tmp_path / "p.txt"
    prec.write_text("3\n3\n8\n")
    proc = run_cli("run", "--kernel", "conv", "--size", "8", "--seed", "1",
                   "--precision-file", str(prec))
    spec = get_kernel("conv")
    inp = generate_input("conv", 1, 8)
    config = KernelConfig.from_precisions(spec, [3, 3, 8], V2)
    want = run_kernel(spec, config, inp, new_context())
    got = np.array([float(line) for line in proc.stdout.split()])
    assert np.array_equal(got, want)


def test_missing_binding_names_variable(tmp_path):
    prec = tmp_path / "p.txt"
    prec.write_text("3\n3\n")  # conv has three variables
    proc = run_cli("run", "--kernel", "conv", "--seed", "1",
                   "--precision-file", str(prec), expect=1)
    assert "acc" in proc.stderr


def test_unknown_kernel_fails_cleanly():
    proc = run_cli("run", "--kernel", "fft", expect=1)
    assert "unknown kernel" in proc.stderr


def test_stats_report_on_stdout_and_file(tmp_path):
    proc = run_cli("stats", "--kernel", "svm", "--size", "8", "--seed", "2")
    rep = parse_stats(proc.stdout)
    assert rep.total_fp_ops() > 0
    out = tmp_path / "s.rpt"
    run_cli("stats", "--kernel", "svm", "--size", "8", "--seed", "2",
            "--report", str(out))
    assert parse_stats(out.read_text()) == rep


def test_run_report_equals_stats_report(tmp_path):
    a = tmp_path / "a.rpt"
    run_cli("run", "--kernel", "knn", "--size", "16", "--seed", "5",
            "--report", str(a))
    b = run_cli("stats", "--kernel", "knn", "--size", "16", "--seed", "5")
    assert parse_stats(a.read_text()) == parse_stats(b.stdout)


def test_tune_writes_files_and_summary(tmp_path):
    prec = tmp_path / "tuned.txt"
    rpt = tmp_path / "tuned.rpt"
    proc = run_cli("tune", "--kernel", "dwt", "--size", "32", "--seed", "1,2",
                   "--threshold", "1e-1", "--precision-file", str(prec),
                   "--report", str(rpt))
    lines = [int(x) for x in prec.read_text().split()]
    assert len(lines) == 4
    assert all(1 <= p <= 24 for p in lines)
    assert "storage totals:" in proc.stdout
    kind, fields = parse(rpt.read_text())
    assert kind == "tuning"
    assert fields["kernel"] == "dwt"
    assert "precision.signal" in fields


def test_tune_then_run_passes_threshold(tmp_path):
    prec = tmp_path / "p.txt"
    run_cli("tune", "--kernel", "svm", "--size", "16", "--seed", "9",
            "--threshold", "1e-2", "--precision-file", str(prec))
    proc = run_cli("run", "--kernel", "svm", "--size", "16", "--seed", "9",
                   "--precision-file", str(prec))
    got = np.array([float(line) for line in proc.stdout.split()])
    spec = get_kernel("svm")
    ref = reference_output(spec, generate_input("svm", 9, 16))
    assert error_metric(ref, got) <= 1e-2


def test_cost_self_baseline_unity(tmp_path):
    rpt = tmp_path / "s.rpt"
    run_cli("stats", "--kernel", "conv", "--size", "8", "--seed", "1",
            "--report", str(rpt))
    proc = run_cli("cost", "--report", str(rpt), "--baseline", str(rpt))
    _, fields = parse(proc.stdout)
    assert float(fields["ratio.cycles"]) == 1.0
    assert float(fields["ratio.mem"]) == 1.0
    assert float(fields["ratio.energy"]) == 1.0


def test_cost_with_custom_tables(tmp_path):
    rpt = tmp_path / "s.rpt"
    run_cli("stats", "--kernel", "conv", "--size", "8", "--seed", "1",
            "--report", str(rpt))
    tables = tmp_path / "t.txt"
    tables.write_text("energy.other 0.0\nstall_fraction 1.0\n")
    base = run_cli("cost", "--report", str(rpt))
    tuned = run_cli("cost", "--report", str(rpt), "--tables", str(tables))
    _, f0 = parse(base.stdout)
    _, f1 = parse(tuned.stdout)
    assert float(f1["energy.other"]) == 0.0
    assert float(f1["cycles.total"]) > float(f0["cycles.total"])


def test_custom_type_system_file(tmp_path):
    fmap = tmp_path / "map.txt"
    fmap.write_text("24 8\n")
    prec = tmp_path / "p.txt"
    prec.write_text("4\n4\n4\n")
    run_cli("run", "--kernel", "conv", "--size", "8", "--seed", "1",
            "--type-system", f"custom:{fmap}", "--precision-file", str(prec))
    proc = run_cli("run", "--kernel", "conv", "--size", "8", "--seed", "1",
                   "--type-system", "custom:/nonexistent/map.txt",
                   "--precision-file", str(prec), expect=1)
    assert "error" in proc.stderr


def test_bad_param_and_threshold_validation(tmp_path):
    proc = run_cli("run", "--kernel", "jacobi", "--param", "iters", expect=1)
    assert "name=value" in proc.stderr
    proc = run_cli("tune", "--kernel", "conv", "--threshold", "-1",
                   "--precision-file", str(tmp_path / "p.txt"), expect=1)
    assert proc.stderr.startswith("error:")
