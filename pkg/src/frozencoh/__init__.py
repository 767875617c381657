"""Open-system simulation of multiqubit Bell-diagonal states and their
coherence and correlation measures."""

__version__ = "0.1.0"

from .channels import (
    KrausChannel,
    NoiseClock,
    apply_local,
    evolve_triple,
    flip_channel,
    gad,
    phase_damping,
)
from .measures import (
    DistanceKind,
    MeasureResult,
    classical_correlations_re,
    closest_incoherent_bd,
    coherence,
    dephase,
    entanglement_re_bd,
    global_discord_m3n,
    quantum_correlations_re,
    total_correlations_re,
)
from .qcore import (
    InfiniteDivergence,
    NonPhysicalStateError,
    fidelity,
    kron,
    partial_trace,
    rel_entropy,
    trace_distance,
    vn_entropy,
)
from .states import (
    CorrelationTriple,
    bd_eigenvalues,
    bd_state,
    random_state_with_triple,
    triple_of,
)
from .theory import (
    FreezingPermutation,
    coherence_floor,
    esd_time,
    freezing_check,
    incoherent_op_check,
    switch_time,
    theta_map,
    theta_unitaries,
)

__all__ = [
    "apply_local",
    "bd_eigenvalues",
    "bd_state",
    "classical_correlations_re",
    "closest_incoherent_bd",
    "coherence",
    "coherence_floor",
    "CorrelationTriple",
    "dephase",
    "DistanceKind",
    "entanglement_re_bd",
    "esd_time",
    "evolve_triple",
    "fidelity",
    "flip_channel",
    "freezing_check",
    "FreezingPermutation",
    "gad",
    "global_discord_m3n",
    "incoherent_op_check",
    "InfiniteDivergence",
    "KrausChannel",
    "kron",
    "MeasureResult",
    "NoiseClock",
    "NonPhysicalStateError",
    "partial_trace",
    "phase_damping",
    "quantum_correlations_re",
    "random_state_with_triple",
    "rel_entropy",
    "switch_time",
    "theta_map",
    "theta_unitaries",
    "total_correlations_re",
    "trace_distance",
    "triple_of",
    "vn_entropy",
    "__version__",
]
