"""CSV / JSON-lines writers for sweep records plus a metadata sidecar."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from pathlib import Path

from .. import __version__
from ..qcore import HERMITIAN_TOL, LOG_BASE, PSD_TOL, TRACE_TOL
from .._optimize import RESTARTS, STALL_TOL, STALL_WINDOW
from .runner import NEGATIVE_TOL, SweepRecord
from .scenario import Scenario

FORMATS = ("csv", "jsonl")


def columns(records: Sequence[SweepRecord]) -> list[str]:
    first = records[0]
    cols = ["t", "c1", "c2", "c3"]
    for name in first.values:
        cols.append(name)
        cols.append(f"{name}_status")
        if any(name in r.axes for r in records):
            cols.append(f"{name}_axis")
    if any(r.scale is not None for r in records):
        cols += ["scale", "replicate"]
    return cols


def to_row(rec: SweepRecord, cols: Sequence[str]) -> dict:
    row = {"t": rec.t, "c1": rec.c1, "c2": rec.c2, "c3": rec.c3}
    for name, value in rec.values.items():
        row[name] = value
        row[f"{name}_status"] = rec.status[name]
        if f"{name}_axis" in cols:
            row[f"{name}_axis"] = rec.axes.get(name)
    if "scale" in cols:
        row["scale"] = rec.scale
        row["replicate"] = rec.replicate
    return {c: row.get(c) for c in cols}


def from_row(row: dict) -> SweepRecord:
    rec = SweepRecord(row["t"], row["c1"], row["c2"], row["c3"])
    for key, value in row.items():
        if key.endswith("_status"):
            rec.status[key[: -len("_status")]] = value
        elif key.endswith("_axis"):
            if value is not None:
                rec.axes[key[: -len("_axis")]] = value
        elif key == "scale":
            rec.scale = value
        elif key == "replicate":
            rec.replicate = value
        elif key not in ("t", "c1", "c2", "c3"):
            rec.values[key] = value
    return rec


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def render(records: Sequence[SweepRecord], fmt: str = "csv") -> str:
    if not records:
        raise ValueError("nothing to export")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    cols = columns(records)
    if fmt == "jsonl":
        return "".join(json.dumps(to_row(r, cols)) + "\n" for r in records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in records:
        row = to_row(r, cols)
        writer.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def metadata(scenario: Scenario | None) -> dict:
    meta = {
        "artifact": "frozencoh",
        "version": __version__,
        "log_base": LOG_BASE,
        "tolerances": {
            "hermitian": HERMITIAN_TOL,
            "trace": TRACE_TOL,
            "psd": PSD_TOL,
            "negative_measure": NEGATIVE_TOL,
            "optimizer_stall": STALL_TOL,
            "optimizer_stall_window": STALL_WINDOW,
            "optimizer_restarts": RESTARTS,
        },
    }
    if scenario is not None:
        meta["scenario"] = scenario.raw
        meta["seeds"] = {"scenario": scenario.seed, "optimizer": scenario.seed}
        if scenario.notes:
            meta["notes"] = scenario.notes
    return meta


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".meta.json")


def export(
    records: Sequence[SweepRecord],
    path: str | Path,
    fmt: str = "csv",
    scenario: Scenario | None = None,
) -> Path:
    """Write ``records`` to ``path`` and the metadata sidecar next to it."""
    text = render(records, fmt)
    path = Path(path)
    path.write_text(text)
    sidecar_path(path).write_text(json.dumps(metadata(scenario), indent=2, sort_keys=True) + "\n")
    return path


def read_jsonl(path: str | Path) -> list[SweepRecord]:
    with open(path) as fh:
        return [from_row(json.loads(line)) for line in fh if line.strip()]
