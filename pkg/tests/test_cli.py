import json
import subprocess
import sys

import pytest

from quasiwerner.cli import main
from quasiwerner.sweep import read_csv
from quasiwerner.verify import Check


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--family", "quasi", "--a", "0:1:0.5", "--r", "0.7,1.4", "--out", str(out)]) == 0
    table = read_csv(out)
    assert len(table) == 6
    assert [(row.a, row.r) for row in table][:2] == [(0.0, 0.7), (0.0, 1.4)]


def test_sweep_json(tmp_path):
    out = tmp_path / "s.json"
    assert main(["sweep", "--family", "perfect", "--a", "0,1", "--out", str(out), "--format", "json"]) == 0
    rows = json.loads(out.read_text())
    assert rows[1]["discord"] == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--family", "quasi", "--a", "0:1:0.5", "--out", "x.csv"],
        ["sweep", "--family", "perfect", "--a", "0:1:0", "--out", "x.csv"],
        ["sweep", "--family", "mixed", "--a", "0.5", "--out", "x.csv"],
        ["point", "--family", "quasi", "--a", "0.5"],
        ["point", "--family", "perfect", "--a", "2"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_1(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 1


def test_point_json(capsys):
    assert main(["point", "--family", "quasi", "--a", "1", "--r", "0.7", "--json"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert list(rec) == ["a", "r", "concurrence", "discord", "mutual_information",
                         "classical_correlation", "theta_star", "phi_star"]
    assert rec["concurrence"] == pytest.approx(0.36526, abs=1e-5)


def test_point_text(capsys):
    assert main(["point", "--family", "perfect", "--a", "0.5"]) == 0
    out = capsys.readouterr().out
    assert "discord" in out and "concurrence" in out


def test_plot_round_trip(tmp_path):
    csv_path, svg_path = tmp_path / "s.csv", tmp_path / "s.svg"
    main(["sweep", "--family", "perfect", "--a", "0:1:0.1", "--out", str(csv_path)])
    assert main(["plot", "--in", str(csv_path), "--axis", "a", "--out", str(svg_path)]) == 0
    assert svg_path.read_text().count("<polyline") == 2
    assert main(["plot", "--in", str(csv_path), "--axis", "r", "--out", str(svg_path)]) == 1
    assert main(["plot", "--in", str(tmp_path / "nope.csv"), "--axis", "a", "--out", str(svg_path)]) == 1


def test_preset_writes_csv_svg_png(tmp_path):
    assert main(["preset", "fig2", "--out-dir", str(tmp_path)]) == 0
    assert {p.name for p in tmp_path.iterdir()} == {"fig2.csv", "fig2.svg", "fig2.png"}


def test_verify_quick_passes():
    assert main(["verify"]) == 0


def test_verify_detects_tampering(monkeypatch, capsys):
    from quasiwerner import verify as verify_mod

    broken = [Check("tampered fixture", 1e-12, lambda: 1e-3)]
    monkeypatch.setattr(verify_mod, "default_checks", lambda full=False: broken)
    monkeypatch.setattr("quasiwerner.cli.verify", verify_mod.verify)
    assert main(["verify"]) == 2
    assert "FAIL  tampered fixture" in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "quasiwerner", "point", "--family", "perfect", "--a", "1", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(res.stdout)["discord"] == pytest.approx(1.0, abs=1e-6)
