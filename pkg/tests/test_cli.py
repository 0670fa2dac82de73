import csv
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from fourpi.cli import SUBCOMMANDS, main
from fourpi.config import ConfigError, FixedParams, parse_config
from fourpi.scans import COLUMNS, run_scan

GOLDEN = Path(__file__).parent / "golden"
KINDS = {"scan-alpha": "alpha", "scan-field": "field", "scan-thickness": "thickness",
         "scan-detuning": "detuning", "oracle": "oracle"}


def _read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.mark.parametrize("command", sorted(KINDS))
def test_golden_output_bytes(command, tmp_path):
    kind = KINDS[command]
    out = tmp_path / f"{kind}.csv"
    assert main([command, "--config", str(GOLDEN / f"{kind}.cfg"), "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / f"{kind}.csv").read_bytes()


@pytest.mark.parametrize("command", sorted(KINDS))
def test_output_is_deterministic(command, tmp_path):
    cfg = str(GOLDEN / f"{KINDS[command]}.cfg")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main([command, "--config", cfg, "--out", str(a)])
    main([command, "--config", cfg, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_csv_format_contract():
    raw = (GOLDEN / "oracle.csv").read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    rows = _read_rows(GOLDEN / "oracle.csv")
    assert rows[0] == list(COLUMNS["oracle"])
    for value in rows[1][:3]:
        mantissa = value.split("e")[0].lstrip("-").replace(".", "")
        assert len(mantissa) == 12


def test_headers_match_column_sets():
    assert COLUMNS == {
        "alpha": ("alpha_rad", "i1", "i2", "i3", "i4"),
        "field": ("b_field", "alpha_rad", "i2", "i3"),
        "thickness": ("d_over_delta", "i2", "i3", "i2_plus_i3"),
        "detuning": ("y", "abs_at_sq", "abs_ar_sq"),
        "oracle": ("energy", "t_re", "t_im", "t_ref_re", "t_ref_im", "abs_err"),
    }
    for kind in COLUMNS:
        assert _read_rows(GOLDEN / f"{kind}.csv")[0] == list(COLUMNS[kind])


def test_alpha_scan_beam_two_column():
    rows = _read_rows(GOLDEN / "alpha.csv")[1:]
    i2 = [float(r[2]) for r in rows]
    np.testing.assert_allclose(i2, [0.5, 0, 0.5, 0, 0.5], atol=1e-12)


def test_thickness_scan_pendellosung():
    rows = np.array(_read_rows(GOLDEN / "thickness.csv")[1:], dtype=float)
    np.testing.assert_allclose(rows[:, 3], np.sin(math.pi * rows[:, 0]) ** 2, atol=1e-12)


def test_oracle_scan_summary(capsys):
    assert main(["oracle", "--config", str(GOLDEN / "oracle.cfg"), "--out", "/dev/null"]) == 0
    err = capsys.readouterr().err
    value = float(err.split("max_abs_err =")[1].split()[0])
    assert value < 1e-10


def test_csv_round_trip(tmp_path):
    cfg = parse_config("detuning", GOLDEN / "detuning.cfg")
    result = run_scan(cfg)
    rows = np.array(_read_rows(GOLDEN / "detuning.csv")[1:], dtype=float)
    np.testing.assert_allclose(rows, result.data, rtol=1e-11, atol=1e-300)


def test_stdout_when_no_out(capsys):
    assert main(["scan-alpha", "--points", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "alpha_rad,i1,i2,i3,i4"
    assert len(out.splitlines()) == 4


def test_svg_written(tmp_path):
    svg = tmp_path / "plot.svg"
    assert main(["scan-alpha", "--points", "11", "--out", str(tmp_path / "a.csv"), "--svg", str(svg)]) == 0
    text = svg.read_text()
    assert text.lstrip().startswith("<?xml") and "<svg" in text
    first = svg.read_bytes()
    main(["scan-alpha", "--points", "11", "--out", str(tmp_path / "a.csv"), "--svg", str(svg)])
    assert svg.read_bytes() == first


def test_flags_override_file(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("tau = 0.3\n")
    assert parse_config("alpha", path).fixed.tau == 0.3
    assert parse_config("alpha", path, {"tau": "0.7"}).fixed.tau == 0.7


def test_empty_config_gives_defaults(tmp_path):
    path = tmp_path / "empty.cfg"
    path.write_text("")
    cfg = parse_config("alpha", path)
    assert cfg.fixed == FixedParams()
    assert (cfg.start, cfg.stop, cfg.n_points) == (0.0, 8 * math.pi, 101)
    assert cfg == parse_config("alpha")


def test_comments_and_dashed_keys(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("# header\n\nspin-up-prob = 0.25  # trailing\n")
    assert parse_config("alpha", path).fixed.spin_up_prob == 0.25


@pytest.mark.parametrize("fixture, fragment", [
    ("malformed.cfg", ":2: key 'energy'"),
    ("unknown_key.cfg", ":2: unknown key 'colour'"),
])
def test_bad_config_exits_two(fixture, fragment, capsys):
    assert main(["scan-alpha", "--config", str(GOLDEN / fixture)]) == 2
    assert fragment in capsys.readouterr().err


def test_parse_config_error_names_key_and_line():
    with pytest.raises(ConfigError, match=r"malformed\.cfg:2: key 'energy'"):
        parse_config("alpha", GOLDEN / "malformed.cfg")


@pytest.mark.parametrize("argv", [
    ["scan-alpha", "--points", "many"],
    ["scan-alpha", "--points", "0"],
    ["scan-alpha", "--mode", "quantum"],
    ["scan-alpha", "--config", "/nonexistent/file.cfg"],
    ["scan-alpha", "--bogus-flag", "1"],
    ["no-such-command"],
])
def test_usage_errors_exit_two(argv, capsys):
    # argparse failures exit from inside main; config failures return the code
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_closed_channel_exits_three(capsys):
    assert main(["scan-field", "--config", str(GOLDEN / "closed_channel.cfg")]) == 3
    assert "channel closed" in capsys.readouterr().err


def test_weak_field_guard_exits_three(capsys):
    assert main(["scan-field", "--energy", "1", "--from", "0", "--to", "1", "--points", "3"]) == 3


def test_module_entry_point(tmp_path):
    out = tmp_path / "t.csv"
    proc = subprocess.run([sys.executable, "-m", "fourpi", "scan-thickness", "--config",
                           str(GOLDEN / "thickness.cfg"), "--out", str(out)], capture_output=True)
    assert proc.returncode == 0
    assert out.read_bytes() == (GOLDEN / "thickness.csv").read_bytes()


def test_every_subcommand_has_a_golden_fixture():
    assert set(SUBCOMMANDS) == set(KINDS)
