"""Bell-diagonal and generalised Bell-diagonal (M3_N) states.

An M3_N state on an even number N of qubits is

    rho = 2**-N (I + c1 X^N + c2 Y^N + c3 Z^N)

and is fixed entirely by its correlation triple ``(c1, c2, c3)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .qcore import (
    PSD_TOL,
    NonPhysicalStateError,
    check_density,
    num_qubits,
    pauli_string,
)

MARGIN = 1e-3
MAX_HALVINGS = 60


class NoMarginError(ValueError):
    """The requested triple sits too close to the physicality boundary."""


class ConsistencyError(ValueError):
    pass


@dataclass(frozen=True)
class CorrelationTriple:
    c1: float
    c2: float
    c3: float
    num_qubits: int = 2

    def __post_init__(self):
        n = self.num_qubits
        if n < 2 or n % 2:
            raise ValueError(f"num_qubits must be even and >= 2, got {n}")
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if abs(v) > 1 + 1e-12:
                raise NonPhysicalStateError(f"|{name}| = {abs(v)} exceeds 1")
            object.__setattr__(self, name, v)
        lam = min(v for v, _ in bd_eigenvalues(self))
        if lam < -PSD_TOL:
            raise NonPhysicalStateError(
                f"triple {self.as_tuple()} (N={n}) has eigenvalue {lam:.6g}", eigenvalue=lam
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def __getitem__(self, axis: int) -> float:
        """Component by Pauli axis, 1-based."""
        return self.as_tuple()[axis - 1]

    def replace(self, **components) -> "CorrelationTriple":
        vals = dict(zip(("c1", "c2", "c3"), self.as_tuple()))
        vals.update(components)
        return CorrelationTriple(num_qubits=self.num_qubits, **vals)


def sign_patterns(n: int):
    parity = (-1) ** (n // 2)
    for s in itertools.product((1, -1), repeat=3):
        if s[0] * s[1] * s[2] == parity:
            yield s


def bd_eigenvalues(c: CorrelationTriple) -> list[tuple[float, int]]:
    """Analytic spectrum of ``bd_state(c)`` as ``(eigenvalue, multiplicity)`` pairs.

    ``X^N, Y^N, Z^N`` commute for even N and their joint eigenvalues
    ``(s1, s2, s3)`` satisfy ``s1 s2 s3 = (-1)**(N/2)``, each pattern
    occurring on a ``2**N / 4`` dimensional subspace.
    """
    n = c.num_qubits
    if n % 2:
        raise ValueError("bd_eigenvalues needs an even qubit count")
    mult = (1 << n) // 4
    vals = c.as_tuple()
    return [
        ((1 + s[0] * vals[0] + s[1] * vals[1] + s[2] * vals[2]) / (1 << n), mult)
        for s in sign_patterns(n)
    ]


def _as_triple(c, num_qubits: int | None) -> CorrelationTriple:
    if isinstance(c, CorrelationTriple):
        return c
    return CorrelationTriple(*c, num_qubits=num_qubits or 2)


def correlator(axis: int, n: int) -> np.ndarray:
    return pauli_string([axis] * n)


def bd_state(c, num_qubits: int | None = None) -> np.ndarray:
    """Density matrix of the M3_N state with correlation triple ``c``.

    ``c`` may be a ``CorrelationTriple`` or a plain 3-sequence (then
    ``num_qubits`` defaults to 2).
    """
    c = _as_triple(c, num_qubits)
    n = c.num_qubits
    d = 1 << n
    rho = np.eye(d, dtype=complex)
    for axis, cj in zip((1, 2, 3), c.as_tuple()):
        if cj:
            rho = rho + cj * correlator(axis, n)
    return rho / d


def triple_of(rho: np.ndarray) -> CorrelationTriple:
    n = num_qubits(rho)
    if n % 2:
        raise ValueError("correlation triples are defined for even N only")
    vals = []
    for axis in (1, 2, 3):
        z = np.trace(rho @ correlator(axis, n))
        if abs(z.imag) > 1e-10:
            raise ConsistencyError(f"<sigma_{axis}^N> has imaginary part {z.imag:.3g}")
        vals.append(float(np.clip(z.real, -1.0, 1.0)))
    return CorrelationTriple(*vals, num_qubits=n)


def is_bd(rho: np.ndarray, tol: float = 1e-10) -> bool:
    """True when ``rho`` coincides with the M3_N state built from its own triple."""
    n = num_qubits(rho)
    if n % 2:
        return False
    return bool(np.max(np.abs(rho - bd_state(triple_of(rho)))) <= tol)


def bell_basis() -> np.ndarray:
    """Columns: Phi+, Phi-, Psi+, Psi-."""
    s = 1 / np.sqrt(2)
    return np.array(
        [[s, s, 0, 0], [0, 0, s, s], [0, 0, s, -s], [s, -s, 0, 0]], dtype=complex
    )


def _protected_basis() -> list[np.ndarray]:
    # HS-orthonormal versions of I, XX, YY, ZZ
    return [pauli_string(a) / 2.0 for a in ((0, 0), (1, 1), (2, 2), (3, 3))]


def random_state_with_triple(
    c, perturbation_scale: float, seed: int, num_qubits: int | None = None
) -> np.ndarray:
    """Non-Bell-diagonal two-qubit state with prescribed correlation triple.

    The perturbation direction starts from a seeded random pure state
    ``|psi>`` whose Bell-basis populations equal the analytic BD spectrum
    (random relative phases), and is Gram-Schmidt orthogonalised against
    ``I, XX, YY, ZZ``. With ``eps = perturbation_scale``, the result
    ``bd_state(c) + eps * P`` is the mixture ``(1 - eps) rho_BD + eps psi``
    and is PSD for ``eps <= 1``; larger values are halved until PSD.
    """
    c = _as_triple(c, num_qubits)
    if c.num_qubits != 2:
        raise ValueError("random_state_with_triple supports N = 2 only")
    if perturbation_scale < 0:
        raise ValueError("perturbation_scale must be nonnegative")
    base = bd_state(c)
    if perturbation_scale == 0:
        return base

    lam_min = min(v for v, _ in bd_eigenvalues(c))
    if lam_min < MARGIN:
        raise NoMarginError(
            f"minimum BD eigenvalue {lam_min:.3g} is below the margin {MARGIN}"
        )

    rng = np.random.default_rng(seed)
    bell = bell_basis()
    pops = np.real(np.einsum("ij,ik,kj->j", bell.conj(), base, bell))
    phases = np.exp(2j * np.pi * rng.random(4))
    psi = bell @ (np.sqrt(np.clip(pops, 0, None)) * phases)
    raw = np.outer(psi, psi.conj())

    pert = raw.copy()
    for e in _protected_basis():
        pert -= np.trace(e.conj().T @ raw) * e
    pert = (pert + pert.conj().T) / 2

    eps = float(perturbation_scale)
    for _ in range(MAX_HALVINGS + 1):
        rho = base + eps * pert
        if np.linalg.eigvalsh(rho)[0] >= -1e-12:
            return check_density(rho)
        eps /= 2
    raise NonPhysicalStateError("PSD back-tracking exhausted")


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))
