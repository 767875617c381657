"""Single-qubit Kraus channels and their local action on N-qubit states."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .qcore import I2, PAULI, SZ, num_qubits
from .states import CorrelationTriple

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not ops or any(k.shape != (2, 2) for k in ops):
            raise ValueError("a single-qubit channel needs a nonempty list of 2x2 operators")
        total = sum(k.conj().T @ k for k in ops)
        err = np.max(np.abs(total - I2))
        if err > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators are not complete (error {err:.3g})")
        object.__setattr__(self, "operators", ops)

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.operators)


@dataclass(frozen=True)
class NoiseClock:
    """Per-qubit relaxation times in seconds.

    ``alpha`` sets the GAD population ``p = 1/2 - alpha``; ``None`` means
    the infinite-temperature value ``p = 1/2``.
    """

    t2: tuple[float, ...]
    t1: tuple[float, ...] | None = None
    alpha: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "t2", tuple(float(x) for x in self.t2))
        if self.t1 is not None:
            object.__setattr__(self, "t1", tuple(float(x) for x in self.t1))
            if len(self.t1) != len(self.t2):
                raise ValueError("t1 and t2 must list the same number of qubits")
        if any(x <= 0 for x in self.t2 + (self.t1 or ())):
            raise ValueError("relaxation times must be positive")
        if self.alpha is not None and not 0 <= self.alpha <= 0.5:
            raise ValueError("alpha must lie in [0, 0.5]")

    @property
    def num_qubits(self) -> int:
        return len(self.t2)

    @property
    def p(self) -> float:
        return 0.5 if self.alpha is None else 0.5 - self.alpha

    @property
    def correlator_rate(self) -> float:
        """Decay rate (1/s) of the N-body correlators transverse to the noise axis."""
        return sum(1.0 / x for x in self.t2)

    def q(self, t: float) -> tuple[float, ...]:
        return tuple(-np.expm1(-t / x) for x in self.t2)

    def u(self, t: float) -> tuple[float, ...]:
        if self.t1 is None:
            raise ValueError("clock has no T1 values")
        return tuple(-np.expm1(-t / x) for x in self.t1)


def _check_unit(name: str, x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return float(x)


def flip_channel(k: int, q: float) -> KrausChannel:
    """Flip noise towards Pauli axis ``k``: ``{sqrt(1-q/2) I, sqrt(q/2) sigma_k}``."""
    if k not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {k}")
    q = _check_unit("q", q)
    return KrausChannel(
        (np.sqrt(1 - q / 2) * I2, np.sqrt(q / 2) * PAULI[k]), label=f"flip{k}(q={q:g})"
    )


def phase_damping(q: float) -> KrausChannel:
    q = _check_unit("q", q)
    return KrausChannel((np.sqrt(1 - q / 2) * I2, np.sqrt(q / 2) * SZ), label=f"pd(q={q:g})")


def gad(u: float, p: float) -> KrausChannel:
    """Generalised amplitude damping with damping ``u`` and ground-state weight ``p``."""
    u = _check_unit("u", u)
    p = _check_unit("p", p)
    a, b = np.sqrt(p), np.sqrt(1 - p)
    su, sv = np.sqrt(u), np.sqrt(1 - u)
    ops = (
        a * np.array([[1, 0], [0, sv]]),
        a * np.array([[0, su], [0, 0]]),
        b * np.array([[sv, 0], [0, 1]]),
        b * np.array([[0, 0], [su, 0]]),
    )
    return KrausChannel(ops, label=f"gad(u={u:g},p={p:g})")


def apply_on_qubit(rho: np.ndarray, channel: KrausChannel, qubit: int) -> np.ndarray:
    n = num_qubits(rho)
    t = rho.reshape([2] * (2 * n))
    row, col = qubit, qubit + n
    out = np.zeros_like(t)
    for k in channel.operators:
        # K acts on the row index, K^dagger on the column index
        s = np.tensordot(k, t, axes=([1], [row]))
        s = np.moveaxis(s, 0, row)
        s = np.tensordot(s, k.conj(), axes=([col], [1]))
        out += np.moveaxis(s, -1, col)
    return out.reshape(rho.shape)


def apply_local(rho: np.ndarray, per_qubit: Sequence[KrausChannel | Sequence[KrausChannel]]) -> np.ndarray:
    """Apply ``K_1 (x) ... (x) K_N`` summed over all Kraus index tuples.

    Channels on distinct qubits commute, so the tensor-product sum is
    evaluated one qubit at a time. An entry of ``per_qubit`` may itself be
    a sequence of channels, applied in order to that qubit.
    """
    n = num_qubits(rho)
    if len(per_qubit) != n:
        raise ValueError(f"need {n} channels, got {len(per_qubit)}")
    out = np.array(rho, dtype=complex)
    for qubit, chans in enumerate(per_qubit):
        if isinstance(chans, KrausChannel):
            chans = (chans,)
        for ch in chans:
            out = apply_on_qubit(out, ch, qubit)
    return (out + out.conj().T) / 2


def flip_noise(clock: NoiseClock, k: int, t: float) -> list[KrausChannel]:
    return [flip_channel(k, q) for q in clock.q(t)]


def pd_gad_noise(clock: NoiseClock, t: float) -> list[list[KrausChannel]]:
    return [
        [phase_damping(q), gad(u, clock.p)] for q, u in zip(clock.q(t), clock.u(t))
    ]


def evolve_triple(c0: CorrelationTriple, clock: NoiseClock, k: int, t: float) -> CorrelationTriple:
    """Closed-form triple after time ``t`` of local flip noise along axis ``k``.

    The component along ``k`` is conserved; the other two shrink by
    ``prod_q (1 - q_q(t)) = exp(-t * sum_q 1/T2_q)``.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if k not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {k}")
    if clock.num_qubits != c0.num_qubits:
        raise ValueError("clock and triple disagree on the number of qubits")
    factor = float(np.exp(-clock.correlator_rate * t))
    vals = [cj if axis == k else cj * factor for axis, cj in zip((1, 2, 3), c0.as_tuple())]
    return CorrelationTriple(*vals, num_qubits=c0.num_qubits)
