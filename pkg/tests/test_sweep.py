import json

import pytest

from quasiwerner.measures import OptimizerOptions
from quasiwerner.sweep import (
    CSV_COLUMNS,
    PRESETS,
    SweepConfig,
    SweepError,
    SweepRow,
    SweepTable,
    emit_csv,
    emit_json,
    evaluate_cell,
    format_csv,
    parse_values,
    preset_config,
    read_csv,
    run_sweep,
)

HEADER = "a,r,concurrence,discord,mutual_information,classical_correlation,theta_star,phi_star"


def test_parse_values():
    assert parse_values("0:1:0.5") == [0.0, 0.5, 1.0]
    assert parse_values("0.2, 0.4") == [0.2, 0.4]
    assert len(parse_values("0.05:3:0.05")) == 60
    assert parse_values("0:1:0.02")[-1] == 1.0
    assert len(parse_values("0:1:0.3")) == 4
    for bad in ("", "0:1", "0:1:0", "1:0:0.1", "0:1:-0.1", "x"):
        with pytest.raises(ValueError):
            parse_values(bad)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig("mixed", (0.5,))
    with pytest.raises(ValueError):
        SweepConfig("perfect", ())
    with pytest.raises(ValueError):
        SweepConfig("perfect", (1.5,))
    with pytest.raises(ValueError):
        SweepConfig("quasi", (0.5,))
    with pytest.raises(ValueError):
        SweepConfig("quasi", (0.5,), (0.0,))


def test_cells_order_is_a_outer_r_inner():
    cfg = SweepConfig("quasi", (0.1, 0.2), (1.0, 2.0, 3.0))
    assert cfg.cells() == [(0.1, 1.0), (0.1, 2.0), (0.1, 3.0), (0.2, 1.0), (0.2, 2.0), (0.2, 3.0)]
    assert SweepConfig("perfect", (0.1,), (9.0,)).cells() == [(0.1, None)]


def test_perfect_sweep_endpoints():
    table = run_sweep(SweepConfig("perfect", parse_values("0:1:0.5")))
    assert len(table) == 3
    assert table.rows[0].discord == pytest.approx(0.0, abs=1e-9)
    assert table.rows[-1].discord == pytest.approx(1.0, abs=1e-6)
    assert table.family == "perfect"


def test_quasi_single_row():
    (row,) = run_sweep(SweepConfig("quasi", (1.0,), (0.7,))).rows
    assert row.concurrence == pytest.approx(0.36526, abs=1e-5)


def test_r_sweep_shape():
    table = run_sweep(SweepConfig("quasi", (0.7,), parse_values("0.05:3:0.05")))
    assert len(table) == 60
    d, c = table.column("discord"), table.column("concurrence")
    assert all(y >= x - 1e-9 for x, y in zip(d, d[1:]))
    assert all(y >= x - 1e-9 for x, y in zip(c, c[1:]))


def test_cell_failure_reports_coordinates():
    with pytest.raises(SweepError, match=r"a=0.5, r=0.0"):
        evaluate_cell("quasi", 0.5, 0.0, OptimizerOptions())


def test_decomposition_on_rows():
    table = run_sweep(SweepConfig("quasi", (0.0, 0.5, 1.0), (0.3, 2.0)))
    for row in table:
        assert row.discord + row.classical_correlation == pytest.approx(row.mutual_information, abs=1e-9)


def test_csv_format(tmp_path):
    table = run_sweep(SweepConfig("perfect", (0.5,)))
    path = emit_csv(table, tmp_path / "one.csv")
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 2
    assert lines[1].startswith("0.5,,")
    fields = lines[1].split(",")
    assert len(fields) == len(CSV_COLUMNS)
    assert fields[3] == f"{table.rows[0].discord:.12g}"


def test_csv_round_trip(tmp_path):
    table = run_sweep(SweepConfig("quasi", (0.3, 0.9), (0.7, 1.9)))
    back = read_csv(emit_csv(table, tmp_path / "t.csv"))
    assert len(back) == len(table)
    for a, b in zip(table, back):
        for col in CSV_COLUMNS:
            x, y = getattr(a, col), getattr(b, col)
            assert abs(x - y) <= 1e-11 * max(1.0, abs(x))


def test_golden_header_and_columns():
    table = SweepTable([SweepRow(0.25, 1.5, 0.0, 0.1, 0.2, 0.1, 0.0, 0.0)])
    assert format_csv(table) == HEADER + "\n0.25,1.5,0,0.1,0.2,0.1,0,0\n"
    assert tuple(SweepRow.__dataclass_fields__) == CSV_COLUMNS


def test_read_csv_rejects_bad_files(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_csv(bad)
    short = tmp_path / "short.csv"
    short.write_text(HEADER + "\n1,2\n")
    with pytest.raises(ValueError):
        read_csv(short)


def test_emit_csv_reports_path(tmp_path):
    table = SweepTable([SweepRow(0.25, None, 0, 0, 0, 0, 0, 0)])
    with pytest.raises(OSError, match="missing"):
        emit_csv(table, tmp_path / "missing" / "x.csv")


def test_json_output(tmp_path):
    table = run_sweep(SweepConfig("perfect", (0.0, 1.0)))
    data = json.loads(emit_json(table, tmp_path / "t.json").read_text())
    assert [set(d) for d in data] == [set(CSV_COLUMNS)] * 2
    assert data[0]["r"] is None


def test_parallel_sweep_is_byte_identical():
    cfg = SweepConfig("quasi", (0.2, 0.6, 1.0), (0.5, 1.5))
    assert format_csv(run_sweep(cfg, workers=1)) == format_csv(run_sweep(cfg, workers=3))


def test_presets():
    assert set(PRESETS) == {"fig1a", "fig1b", "fig1c", "fig2"}
    cfg, axis = preset_config("fig1c")
    assert axis == "r" and cfg.a_values == (0.7,) and cfg.r_values[0] == 0.05 and cfg.r_values[-1] == 3.0
    cfg, axis = preset_config("fig2")
    assert cfg.family == "perfect" and cfg.a_values[-1] == 1.0
    with pytest.raises(ValueError):
        preset_config("fig3")
