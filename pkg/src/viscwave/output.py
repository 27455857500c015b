"""Output directory sink for `simulate`: snapshots, diagnostics.csv, summary.json."""

import csv
import json
from pathlib import Path
from typing import Any

from loguru import logger

from viscwave.diagnostics import CSV_COLUMNS, DiagnosticsRecord
from viscwave.params import ModelParams
from viscwave.snapshot import write_snapshot
from viscwave.timestepper import SimulationEvent, SnapshotEvent

DIAGNOSTICS_FILE = "diagnostics.csv"
SUMMARY_FILE = "summary.json"


def snapshot_name(step: int) -> str:
    return f"snap_{step:06d}.vwav"


def format_value(value: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(value, ".17g")


class RunWriter:
    """Sink writing one run's artifacts into a directory.

    Use as a context manager so the CSV is flushed and closed on errors too.
    """

    def __init__(self, output_dir: str | Path, params: ModelParams):
        self.output_dir = Path(output_dir)
        self.params = params
        self.snapshots_written = 0
        self.rows_written = 0
        self._csv_file = None
        self._csv = None

    def open(self) -> "RunWriter":
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self._csv_file = (self.output_dir / DIAGNOSTICS_FILE).open("w", newline="", encoding="utf-8")
        self._csv = csv.writer(self._csv_file, lineterminator="\n")
        self._csv.writerow(CSV_COLUMNS)
        logger.info(f"Writing run output to {self.output_dir}")
        return self

    def close(self) -> None:
        if self._csv_file is not None:
            self._csv_file.close()
            self._csv_file = None
            self._csv = None

    def __enter__(self) -> "RunWriter":
        return self.open()

    def __exit__(self, exc_type, exc, tb) -> None:
        self.close()

    def __call__(self, event: SimulationEvent) -> None:
        if isinstance(event, SnapshotEvent):
            write_snapshot(event.state, self.params, self.output_dir / snapshot_name(event.step))
            self.snapshots_written += 1
        elif isinstance(event, DiagnosticsRecord):
            if self._csv is None:
                raise RuntimeError("RunWriter used before open()")
            self._csv.writerow([format_value(v) for v in event.values()])
            self.rows_written += 1
        else:
            raise TypeError(f"Unknown simulation event: {type(event).__name__}")

    def write_summary(self, summary: dict[str, Any]) -> Path:
        path = self.output_dir / SUMMARY_FILE
        payload = {
            **summary,
            "params": self.params.model_dump(mode="json"),
            "snapshots_written": self.snapshots_written,
            "diagnostics_rows": self.rows_written,
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Summary written to {path}")
        return path


def read_diagnostics(path: str | Path) -> list[dict[str, float]]:
    """Load a diagnostics.csv back as a list of column -> value rows."""
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        return [{key: float(value) for key, value in row.items()} for row in reader]
