"""Parameter sweeps over (a, r) and their delimited-text serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .measures import OptimizerOptions, analyze
from .states import werner_state

CSV_COLUMNS = (
    "a",
    "r",
    "concurrence",
    "discord",
    "mutual_information",
    "classical_correlation",
    "theta_star",
    "phi_star",
)


class SweepError(RuntimeError):
    """A sweep cell failed numerically."""


def parse_values(text: str) -> list[float]:
    """Parse ``start:stop:step`` (stop inclusive within 1e-12) or ``v1,v2,...``."""
    text = text.strip()
    if not text:
        raise ValueError("empty value specification")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if not step > 0:
            raise ValueError(f"range step must be > 0, got {step}")
        if stop < start:
            raise ValueError(f"range stop {stop} is below start {start}")
        n = math.floor((stop - start) / step)
        if abs(start + (n + 1) * step - stop) <= 1e-12:
            n += 1
        return [round(start + k * step, 12) for k in range(n + 1)]
    return [float(v) for v in text.split(",")]


@dataclass(frozen=True)
class SweepConfig:
    family: str
    a_values: tuple[float, ...]
    r_values: tuple[float, ...] = ()
    options: OptimizerOptions = field(default_factory=OptimizerOptions)

    def __post_init__(self):
        object.__setattr__(self, "a_values", tuple(float(a) for a in self.a_values))
        object.__setattr__(self, "r_values", tuple(float(r) for r in self.r_values))
        if self.family not in ("perfect", "quasi"):
            raise ValueError(f"family must be 'perfect' or 'quasi', got {self.family!r}")
        if not self.a_values:
            raise ValueError("no a values given")
        if any(not 0.0 <= a <= 1.0 for a in self.a_values):
            raise ValueError("a values must lie in [0, 1]")
        if self.family == "quasi":
            if not self.r_values:
                raise ValueError("quasi family needs r values")
            if any(not (r > 0 and math.isfinite(r)) for r in self.r_values):
                raise ValueError("r values must be finite and > 0")

    def cells(self) -> list[tuple[float, float | None]]:
        """Cartesian product, a outer and r inner."""
        if self.family == "perfect":
            return [(a, None) for a in self.a_values]
        return [(a, r) for a in self.a_values for r in self.r_values]


@dataclass(frozen=True)
class SweepRow:
    a: float
    r: float | None
    concurrence: float
    discord: float
    mutual_information: float
    classical_correlation: float
    theta_star: float
    phi_star: float

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class SweepTable:
    rows: list[SweepRow]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def column(self, name: str) -> list:
        return [getattr(row, name) for row in self.rows]

    @property
    def family(self) -> str:
        return "perfect" if all(row.r is None for row in self.rows) else "quasi"


def evaluate_cell(family: str, a: float, r: float | None, options: OptimizerOptions) -> SweepRow:
    try:
        rep = analyze(werner_state(family, a, r), options)
    except (ValueError, ArithmeticError) as exc:
        raise SweepError(f"cell (a={a}, r={r}) failed: {exc}") from exc
    return SweepRow(
        a, r, rep.concurrence, rep.discord, rep.mutual_information,
        rep.classical_correlation, rep.theta_star, rep.phi_star,
    )


def _evaluate_packed(args):
    return evaluate_cell(*args)


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepTable:
    """Evaluate every cell; row order follows the config regardless of ``workers``."""
    jobs = [(config.family, a, r, config.options) for a, r in config.cells()]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_packed, jobs, chunksize=4))
    else:
        rows = [_evaluate_packed(job) for job in jobs]
    return SweepTable(rows)


def _fmt(value) -> str:
    if value is None:
        return ""
    return f"{float(value) + 0.0:.12g}"


def format_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in table:
        writer.writerow([_fmt(getattr(row, col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def emit_csv(table: SweepTable, path) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(table))
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def read_csv(path) -> SweepTable:
    """Parse a file written by :func:`emit_csv`."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_COLUMNS:
            raise ValueError(f"{path}: unexpected CSV header {header}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if len(rec) != len(CSV_COLUMNS):
                raise ValueError(f"{path}:{lineno}: expected {len(CSV_COLUMNS)} fields")
            vals = {
                col: (None if (col == "r" and v == "") else float(v))
                for col, v in zip(CSV_COLUMNS, rec)
            }
            rows.append(SweepRow(**vals))
    return SweepTable(rows)


def format_json(table: SweepTable) -> str:
    return json.dumps([row.as_dict() for row in table], indent=2) + "\n"


def emit_json(table: SweepTable, path) -> Path:
    path = Path(path)
    path.write_text(format_json(table), encoding="utf-8")
    return path


PRESETS = {
    "fig1a": dict(family="quasi", a="0:1:0.02", r="0.7", axis="a"),
    "fig1b": dict(family="quasi", a="0:1:0.02", r="2.5", axis="a"),
    "fig1c": dict(family="quasi", a="0.7", r="0.05:3:0.05", axis="r"),
    "fig2": dict(family="perfect", a="0:1:0.02", r=None, axis="a"),
}


def preset_config(name: str, options: OptimizerOptions | None = None) -> tuple[SweepConfig, str]:
    """Return ``(config, plot_axis)`` for one of the named figure presets."""
    try:
        spec = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    config = SweepConfig(
        family=spec["family"],
        a_values=parse_values(spec["a"]),
        r_values=parse_values(spec["r"]) if spec["r"] else (),
        options=options or OptimizerOptions(),
    )
    return config, spec["axis"]

