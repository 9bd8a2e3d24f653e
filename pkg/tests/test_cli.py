import math
import subprocess
import sys

import numpy as np
import pytest

from fracspec import NoiseSpec, white_noise
from fracspec import cli, exactops
from fracspec.cli import main, parse_series_csv
from fracspec.errors import ConsistencyError


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_rows(text):
    rows = []
    for line in text.splitlines():
        if not line or line.startswith("#") or line[0].isalpha():
            continue
        rows.append([float(f) for f in line.split(",")])
    return np.array(rows)


def test_kernel_command_alpha_one(capsys):
    code, out, err = run_cli(["kernel", "--order", "1", "--half-width", "3"], capsys)
    assert code == 0 and err == ""
    rows = parse_rows(out)
    want = [1 / 3, -1 / 2, 1.0, 0.0, -1.0, 1 / 2, -1 / 3]
    assert rows[:, 0].tolist() == [-3, -2, -1, 0, 1, 2, 3]
    assert np.abs(rows[:, 1] - want).max() <= 1e-9


def test_coeffs_command(capsys):
    code, out, _ = run_cli(["coeffs", "--order", "0.5", "--truncation", "3"], capsys)
    assert code == 0
    rows = parse_rows(out)
    assert rows[:, 1].tolist() == [1.0, -0.5, -0.125, -0.0625]


def test_simulate_rerun_is_byte_identical(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["simulate", "--d", "0.3", "--n", "64", "--seed", "5"]
    assert main(args + ["-o", str(out1)]) == 0
    assert main(args + ["-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_simulate_metadata_header(capsys):
    code, out, _ = run_cli(
        ["simulate", "--d", "0.6", "--n", "4", "--seed", "1"], capsys
    )
    assert code == 0
    assert "# d=0.6, p=0, q=0, sigma=1, seed=1, truncation=4" in out
    assert "stationary=false" in out


def test_difference_round_trip_recovers_noise(tmp_path, capsys):
    n, seed, d = 128, 3, 0.3
    sim = tmp_path / "y.csv"
    assert main(
        ["simulate", "--d", str(d), "--n", str(n), "--seed", str(seed),
         "--truncation", str(n), "-o", str(sim)]
    ) == 0
    code, out, _ = run_cli(
        ["difference", "--input", str(sim), "--order", str(d), "--truncation", str(n)],
        capsys,
    )
    assert code == 0
    got = parse_rows(out)[:, 1]
    want = white_noise(NoiseSpec(seed=seed), n).values
    # agreement at printed precision (12 significant digits)
    assert np.abs(got - want).max() <= 1e-11 * max(1.0, np.abs(want).max())


def test_difference_exact_family(tmp_path, capsys):
    sim = tmp_path / "y.csv"
    assert main(["simulate", "--d", "0", "--n", "32", "--seed", "2", "-o", str(sim)]) == 0
    code, out, _ = run_cli(
        ["difference", "--input", str(sim), "--order", "0.5", "--family", "exact",
         "--half-width", "8", "--boundary", "periodic"],
        capsys,
    )
    assert code == 0
    assert parse_rows(out).shape == (32, 2)


def test_spectrum_command(tmp_path, capsys):
    sim = tmp_path / "y.csv"
    assert main(["simulate", "--d", "0", "--n", "64", "--seed", "4", "-o", str(sim)]) == 0
    code, out, _ = run_cli(["spectrum", "--input", str(sim)], capsys)
    assert code == 0
    rows = parse_rows(out)
    assert rows.shape == (32, 2)
    assert rows[0, 0] == pytest.approx(2.0 * math.pi / 64)
    assert "normalization" in out


def test_response_command_nyquist_magnitude_gap(capsys):
    code, out, _ = run_cli(
        ["response", "--family", "gl", "--order", "0.4", "--truncation", "2048",
         "--grid", "32"],
        capsys,
    )
    assert code == 0
    rows = parse_rows(out)
    assert rows.shape == (32, 6)
    last = rows[-1]
    assert last[0] == pytest.approx(math.pi)
    measured_mag = abs(complex(last[1], last[2]))
    target_mag = abs(complex(last[3], last[4]))
    gap = abs(measured_mag - target_mag) / target_mag
    assert gap == pytest.approx(1.0 - (2.0 / math.pi) ** 0.4, abs=2e-3)


def test_response_rerun_is_byte_identical(tmp_path):
    args = ["response", "--family", "exact", "--order", "0.5", "--truncation", "32",
            "--grid", "16"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_estimate_command(tmp_path, capsys):
    sim = tmp_path / "y.csv"
    assert main(
        ["simulate", "--d", "0.3", "--n", "4096", "--seed", "7", "-o", str(sim)]
    ) == 0
    code, out, _ = run_cli(["estimate", "--input", str(sim), "--bandwidth", "64"], capsys)
    assert code == 0
    header, row = [l for l in out.splitlines() if l]
    assert header == "d_hat,std_err,bandwidth,n,classification"
    fields = row.split(",")
    d_hat = float(fields[0])
    assert 0.0 <= d_hat <= 0.65
    assert fields[2] == "64" and fields[3] == "4096"
    assert fields[4] in ("long", "short", "none")


def test_acf_sample_and_theoretical(tmp_path, capsys):
    sim = tmp_path / "y.csv"
    assert main(["simulate", "--d", "0", "--n", "256", "--seed", "6", "-o", str(sim)]) == 0
    code, out, _ = run_cli(["acf", "--input", str(sim), "--max-lag", "8"], capsys)
    assert code == 0
    assert parse_rows(out).shape == (9, 2)
    code, out, _ = run_cli(
        ["acf", "--d", "0.3", "--max-lag", "8", "--truncation", "5000"], capsys
    )
    assert code == 0
    rows = parse_rows(out)
    assert rows.shape == (9, 2)
    assert rows[0, 1] > rows[8, 1] > 0.0


def test_exit_code_usage_error(capsys):
    code, _, err = run_cli(["simulate", "--n", "8"], capsys)  # missing --d
    assert code == 1 and err != ""
    code, _, err = run_cli(["acf", "--max-lag", "8"], capsys)  # neither input nor d
    assert code != 0


def test_exit_code_validation_error(capsys):
    code, _, err = run_cli(["simulate", "--d", "1.5", "--n", "8"], capsys)
    assert code == 1 and "d must satisfy" in err


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,value\n0,1.0\n1,oops\n")
    code, _, err = run_cli(["difference", "--input", str(bad), "--order", "0.5"], capsys)
    assert code == 2
    assert "bad.csv:3:2" in err


def test_exit_code_missing_file(capsys):
    code, _, err = run_cli(["spectrum", "--input", "/nonexistent/x.csv"], capsys)
    assert code == 2


def test_exit_code_consistency_error(monkeypatch, capsys):
    def boom(order, half_width):
        raise ConsistencyError("synthetic mismatch")

    monkeypatch.setattr(exactops, "exact_kernel_window", boom)
    code, _, err = run_cli(["kernel", "--order", "0.5", "--half-width", "4"], capsys)
    assert code == 3 and "consistency" in err


def test_parse_series_csv_roundtrip():
    text = "# d=0.3, seed=7\nt,value\n0,1.5\n0.5,2.5\n1,3.5\n"
    series, meta = parse_series_csv(text, "<test>")
    assert series.values.tolist() == [1.5, 2.5, 3.5]
    assert series.step == 0.5 and series.start == 0.0
    assert meta["d"] == "0.3" and meta["seed"] == "7"


def test_parse_series_csv_rejects_nonuniform():
    text = "t,value\n0,1.0\n1,2.0\n3,3.0\n"
    with pytest.raises(ValueError):
        parse_series_csv(text, "<test>")


def test_pipeline_subprocess():
    sim = subprocess.run(
        [sys.executable, "-m", "fracspec", "simulate", "--d", "0.3", "--n", "1024",
         "--seed", "7", "--truncation", "1024"],
        capture_output=True,
        timeout=300,
    )
    assert sim.returncode == 0, sim.stderr.decode()
    est = subprocess.run(
        [sys.executable, "-m", "fracspec", "estimate", "--bandwidth", "32"],
        input=sim.stdout,
        capture_output=True,
        timeout=300,
    )
    assert est.returncode == 0, est.stderr.decode()
    lines = est.stdout.decode().splitlines()
    assert lines[0] == "d_hat,std_err,bandwidth,n,classification"
