"""Scenario configuration: schema, validation and the bundled scenarios."""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from ..channels import NoiseClock
from ..measures import DistanceKind
from ..qcore import NonPhysicalStateError
from ..states import CorrelationTriple

# measure id -> (column prefix, allowed kinds, two-qubit only, needs BD states)
MEASURES = {
    "coherence": ("C", None, False, False),
    "coherence_floor": ("floor", None, False, False),
    "quantum_correlations": ("Q", {"RE"}, True, False),
    "classical_correlations": ("P", {"RE"}, True, False),
    "total_correlations": ("T", {"RE"}, True, False),
    "entanglement": ("E", {"RE"}, True, True),
    "global_discord": ("GD", {"RE"}, False, True),
}

_KIND_NAMES = sorted({n for k in DistanceKind for n in (k.value, k.tag)})

SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "num_qubits", "initial", "clock", "noise", "time_grid", "measures"],
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "num_qubits": {"type": "integer", "minimum": 2, "multipleOf": 2},
        "initial": {
            "type": "object",
            "additionalProperties": False,
            "required": ["triple"],
            "properties": {
                "triple": {
                    "type": "array",
                    "items": {"type": "number", "minimum": -1, "maximum": 1},
                    "minItems": 3,
                    "maxItems": 3,
                },
                "perturbation_scale": {
                    "oneOf": [
                        {"type": "number", "minimum": 0},
                        {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
                    ]
                },
                "seed": {"type": "integer", "minimum": 0},
                "replicates": {"type": "integer", "minimum": 1},
                "keep_replicates": {"type": "boolean"},
            },
        },
        "clock": {
            "type": "object",
            "additionalProperties": False,
            "required": ["t2"],
            "properties": {
                "t2": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
                "t1": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
                "alpha": {"type": "number", "minimum": 0, "maximum": 0.5},
            },
        },
        "noise": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["pd_only", "pd_plus_gad", "flip"]},
                "axis": {"enum": [1, 2, 3]},
            },
        },
        "time_grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["start", "stop", "steps"],
            "properties": {
                "start": {"type": "number", "minimum": 0},
                "stop": {"type": "number", "minimum": 0},
                "steps": {"type": "integer", "minimum": 1},
            },
        },
        "basis": {"enum": [1, 2, 3]},
        "measures": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id"],
                "properties": {
                    "id": {"enum": sorted(MEASURES)},
                    "kind": {"enum": _KIND_NAMES},
                },
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "path": {"type": "string", "minLength": 1},
                "format": {"enum": ["csv", "jsonl"]},
            },
        },
        "notes": {"type": "string"},
    },
}


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


def _fmt_path(parts) -> str:
    out = ""
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


@dataclass(frozen=True)
class MeasureSpec:
    id: str
    kind: DistanceKind

    @property
    def column(self) -> str:
        return f"{MEASURES[self.id][0]}_{self.kind.tag}"


@dataclass(frozen=True)
class Scenario:
    name: str
    num_qubits: int
    triple: CorrelationTriple
    clock: NoiseClock
    noise: str
    times: tuple[float, ...]
    measures: tuple[MeasureSpec, ...]
    basis: int = 1
    noise_axis: int = 3
    perturbation_scales: tuple[float, ...] = ()
    seed: int = 0
    replicates: int = 1
    keep_replicates: bool = False
    output_path: str | None = None
    output_format: str = "csv"
    notes: str = ""
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_ensemble(self) -> bool:
        return any(s > 0 for s in self.perturbation_scales)

    def with_seed(self, seed: int) -> "Scenario":
        raw = copy.deepcopy(self.raw)
        raw.setdefault("initial", {})["seed"] = seed
        return from_dict(raw)

    def with_output(self, path: str | None = None, fmt: str | None = None) -> "Scenario":
        raw = copy.deepcopy(self.raw)
        out = raw.setdefault("output", {})
        if path is not None:
            out["path"] = str(path)
        if fmt is not None:
            out["format"] = fmt
        return from_dict(raw)


def from_dict(cfg: dict) -> Scenario:
    """Validate a configuration mapping and build a ``Scenario``.

    Raises ``ConfigError`` naming the offending field path.
    """
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigError(_fmt_path(err.absolute_path), err.message)

    n = cfg["num_qubits"]
    init = cfg["initial"]
    try:
        triple = CorrelationTriple(*init["triple"], num_qubits=n)
    except NonPhysicalStateError as exc:
        raise ConfigError("initial.triple", f"nonphysical initial state ({exc})") from None

    scales = init.get("perturbation_scale", ())
    scales = tuple(float(s) for s in (scales if isinstance(scales, (list, tuple)) else [scales]))
    if any(scales) and n != 2:
        raise ConfigError("initial.perturbation_scale", "random non-BD states are available for N = 2 only")

    clk = cfg["clock"]
    if len(clk["t2"]) != n:
        raise ConfigError("clock.t2", f"expected {n} values, got {len(clk['t2'])}")
    if "t1" in clk and len(clk["t1"]) != n:
        raise ConfigError("clock.t1", f"expected {n} values, got {len(clk['t1'])}")
    clock = NoiseClock(tuple(clk["t2"]), tuple(clk["t1"]) if "t1" in clk else None, clk.get("alpha"))

    noise = cfg["noise"]["kind"]
    axis = cfg["noise"].get("axis", 3)
    if noise == "pd_plus_gad" and clock.t1 is None:
        raise ConfigError("clock.t1", "pd_plus_gad noise needs T1 values")
    if noise != "flip" and "axis" in cfg["noise"] and axis != 3:
        raise ConfigError("noise.axis", "phase damping acts along axis 3")

    grid = cfg["time_grid"]
    if grid["stop"] <= grid["start"]:
        raise ConfigError("time_grid.stop", "must exceed time_grid.start")
    times = tuple(float(t) for t in np.linspace(grid["start"], grid["stop"], grid["steps"] + 1))

    bd_only = not any(scales) and not (noise == "pd_plus_gad" and clock.alpha)
    measures = []
    for i, m in enumerate(cfg["measures"]):
        mid = m["id"]
        _, kinds, two_qubit, needs_bd = MEASURES[mid]
        kind = DistanceKind.parse(m.get("kind", "RE"))
        where = f"measures[{i}]"
        if kinds is not None and kind.tag not in kinds:
            raise ConfigError(f"{where}.kind", f"{mid} is implemented for relative entropy only")
        if two_qubit and n != 2:
            raise ConfigError(f"{where}.id", f"{mid} is defined for two qubits, scenario has N = {n}")
        if needs_bd and not bd_only:
            raise ConfigError(f"{where}.id", f"{mid} needs Bell-diagonal states throughout")
        spec = MeasureSpec(mid, kind)
        if spec in measures:
            raise ConfigError(where, f"duplicate measure {spec.column}")
        measures.append(spec)

    out = cfg.get("output", {})
    return Scenario(
        name=cfg["name"],
        num_qubits=n,
        triple=triple,
        clock=clock,
        noise=noise,
        noise_axis=axis,
        times=times,
        measures=tuple(measures),
        basis=cfg.get("basis", 1),
        perturbation_scales=scales,
        seed=init.get("seed", 0),
        replicates=init.get("replicates", 1),
        keep_replicates=init.get("keep_replicates", False),
        output_path=out.get("path"),
        output_format=out.get("format", "csv"),
        notes=cfg.get("notes", ""),
        raw=copy.deepcopy(cfg),
    )


def load(path: str | Path) -> Scenario:
    text = Path(path).read_text()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"not valid JSON: {exc}") from None
    return from_dict(cfg)


_ALL_COHERENCE = [{"id": "coherence", "kind": k} for k in ("RE", "L1", "Tr", "F")]

# two-qubit run: J ~ 215 Hz, sampling every 2/J from 0 to 0.5 s
_FIG1 = {
    "name": "fig1",
    "num_qubits": 2,
    "initial": {"triple": [1.0, 0.7, -0.7]},
    "clock": {"t2": [0.14, 0.90], "t1": [7.53, 12.46]},
    "noise": {"kind": "pd_only"},
    "time_grid": {"start": 0.0, "stop": 0.5, "steps": 54},
    "basis": 1,
    "measures": _ALL_COHERENCE
    + [
        {"id": "quantum_correlations", "kind": "RE"},
        {"id": "classical_correlations", "kind": "RE"},
        {"id": "total_correlations", "kind": "RE"},
        {"id": "entanglement", "kind": "RE"},
    ],
    "output": {"path": "fig1.csv", "format": "csv"},
}

_FIG1_GAD = {
    **copy.deepcopy(_FIG1),
    "name": "fig1_gad",
    "noise": {"kind": "pd_plus_gad"},
    "measures": [{"id": "coherence", "kind": "L1"}, {"id": "coherence", "kind": "RE"}],
    "output": {"path": "fig1_gad.csv", "format": "csv"},
}

# mixing weights towards the random pure state that give purities 0.92 and 0.93
FIG2_SCALES = [0.8672, 0.8849]

_FIG2 = {
    "name": "fig2",
    "num_qubits": 2,
    "initial": {
        "triple": [0.95, 0.62, -0.65],
        "perturbation_scale": FIG2_SCALES,
        "seed": 2016,
        "replicates": 10,
        "keep_replicates": True,
    },
    "clock": {"t2": [0.14, 0.90], "t1": [7.53, 12.46]},
    "noise": {"kind": "pd_only"},
    "time_grid": {"start": 0.0, "stop": 0.5, "steps": 10},
    "basis": 1,
    "measures": _ALL_COHERENCE
    + [{"id": "coherence_floor", "kind": k} for k in ("RE", "L1", "Tr", "F")],
    "output": {"path": "fig2.csv", "format": "csv"},
    "notes": "random non-BD states with the measured triple stand in for the prepared states",
}

# effective collective decay time 0.04 s -> per-qubit T2 of 4 x 0.04 s
_FIG3 = {
    "name": "fig3",
    "num_qubits": 4,
    "initial": {"triple": [1.0, 0.7, 0.7]},
    "clock": {"t2": [0.16, 0.16, 0.16, 0.16]},
    "noise": {"kind": "pd_only"},
    "time_grid": {"start": 0.0, "stop": 0.12, "steps": 24},
    "basis": 1,
    "measures": [
        {"id": "coherence", "kind": "RE"},
        {"id": "coherence", "kind": "L1"},
        {"id": "coherence", "kind": "Tr"},
        {"id": "global_discord", "kind": "RE"},
    ],
    "output": {"path": "fig3.csv", "format": "csv"},
    "notes": "time grid 0-0.12 s in 24 steps is a stand-in; per-qubit T2 = 4 x 0.04 s",
}

BUILTINS = {"fig1": _FIG1, "fig1_gad": _FIG1_GAD, "fig2": _FIG2, "fig3": _FIG3}


def builtin(name: str) -> Scenario:
    try:
        cfg = BUILTINS[name]
    except KeyError:
        raise ConfigError("", f"unknown builtin scenario {name!r}; choose from {sorted(BUILTINS)}") from None
    return from_dict(copy.deepcopy(cfg))
