"""Time sweeps: evolve the initial state(s) and tabulate the requested measures."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import measures as ms
from ..channels import apply_local, flip_noise, pd_gad_noise
from ..qcore import NonPhysicalStateError, check_density
from ..states import bd_state, is_bd, random_state_with_triple, triple_of
from ..theory import coherence_floor
from .scenario import MeasureSpec, Scenario

NEGATIVE_TOL = 1e-9


class NumericalError(RuntimeError):
    """An invariant (physicality, nonnegative measure) failed during a sweep."""


@dataclass
class SweepRecord:
    t: float
    c1: float
    c2: float
    c3: float
    values: dict[str, float] = field(default_factory=dict)
    status: dict[str, str] = field(default_factory=dict)
    # dominant axis of the closest classical state, for correlation columns
    axes: dict[str, int] = field(default_factory=dict)
    scale: float | None = None
    replicate: int | None = None

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


def initial_states(s: Scenario) -> list[tuple[float | None, int | None, np.ndarray]]:
    """``(scale, replicate, rho0)`` for every trajectory in the scenario."""
    if not s.is_ensemble:
        return [(None, None, bd_state(s.triple))]
    out = []
    for si, scale in enumerate(s.perturbation_scales):
        for r in range(s.replicates):
            seed = s.seed + 1000 * si + r
            out.append((scale, r, random_state_with_triple(s.triple, scale, seed)))
    return out


def evolve(s: Scenario, rho0: np.ndarray, t: float) -> np.ndarray:
    if s.noise == "pd_plus_gad":
        chans = pd_gad_noise(s.clock, t)
    else:
        axis = 3 if s.noise == "pd_only" else s.noise_axis
        chans = flip_noise(s.clock, axis, t)
    return apply_local(rho0, chans)


def compute_measure(spec: MeasureSpec, rho: np.ndarray, basis: int, seed: int) -> ms.MeasureResult:
    if spec.id == "coherence":
        return ms.coherence(rho, basis, spec.kind, seed=seed)
    if spec.id == "coherence_floor":
        return coherence_floor(rho, basis, spec.kind, seed=seed)
    if spec.id == "quantum_correlations":
        return ms.quantum_correlations_re(rho, seed=seed)
    if spec.id == "classical_correlations":
        return ms.classical_correlations_re(rho, seed=seed)
    if spec.id == "total_correlations":
        return ms.total_correlations_re(rho)
    if spec.id == "entanglement":
        return ms.entanglement_re_bd(triple_of(rho), seed=seed)
    if spec.id == "global_discord":
        return ms.global_discord_m3n(triple_of(rho))
    raise ValueError(f"unknown measure {spec.id}")


def _record(s: Scenario, rho: np.ndarray, t: float, scale, replicate) -> SweepRecord:
    try:
        check_density(rho)
    except NonPhysicalStateError as exc:
        raise NumericalError(f"state at t={t} is not physical: {exc}") from exc
    c = triple_of(rho)
    rec = SweepRecord(t, c.c1, c.c2, c.c3, scale=scale, replicate=replicate)
    for spec in s.measures:
        res = compute_measure(spec, rho, s.basis, s.seed)
        if not res.value >= -NEGATIVE_TOL:
            raise NumericalError(f"{spec.column} = {res.value} at t={t}")
        rec.values[spec.column] = float(res.value)
        rec.status[spec.column] = res.optimizer_status
        if spec.id in ("quantum_correlations", "classical_correlations"):
            chi = res.closest_state
            if chi is not None and is_bd(chi, tol=1e-8):
                rec.axes[spec.column] = ms.dominant_axis(triple_of(chi))
    return rec


def _mean_record(group: list[SweepRecord], scale) -> SweepRecord:
    first = group[0]
    rec = SweepRecord(
        first.t,
        *(float(np.mean([g.triple[i] for g in group])) for i in range(3)),
        scale=scale,
    )
    for col in first.values:
        rec.values[col] = float(np.mean([g.values[col] for g in group]))
        statuses = {g.status[col] for g in group}
        rec.status[col] = ms.MAX_ITER if ms.MAX_ITER in statuses else sorted(statuses)[0]
    return rec


def run_scenario(s: Scenario, threads: int = 1) -> list[SweepRecord]:
    """Evaluate every grid point; records come back ordered by time.

    Ensemble scenarios yield, at each time, one mean row per scale
    followed (when ``keep_replicates`` is set) by the per-replicate rows.
    Grid points may run on ``threads`` workers (0 = one per CPU); the
    output does not depend on the worker count.
    """
    starts = initial_states(s)

    def at(i: int) -> list[SweepRecord]:
        t = s.times[i]
        return [_record(s, evolve(s, rho0, t), t, scale, rep) for scale, rep, rho0 in starts]

    workers = (os.cpu_count() or 1) if threads == 0 else max(1, threads)
    if workers == 1:
        per_time = [at(i) for i in range(len(s.times))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_time = list(pool.map(at, range(len(s.times))))

    if not s.is_ensemble:
        return [rows[0] for rows in per_time]

    out = []
    for rows in per_time:
        groups = [[r for r in rows if r.scale == scale] for scale in s.perturbation_scales]
        out.extend(_mean_record(g, scale) for g, scale in zip(groups, s.perturbation_scales))
        if s.keep_replicates:
            out.extend(r for g in groups for r in g)
    return out
