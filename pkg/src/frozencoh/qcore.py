"""Dense linear algebra and entropic primitives on small multiqubit states.

Density matrices are plain ``numpy`` complex arrays of shape ``(2**N, 2**N)``.
All logarithms are base 2, so entropies and divergences come out in bits.
"""

from __future__ import annotations

from collections.abc import Iterable
from functools import reduce

import numpy as np

LOG_BASE = 2

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {0: I2, 1: SX, 2: SY, 3: SZ}


class NonPhysicalStateError(ValueError):
    """A matrix or triple fails the density-matrix invariants."""

    def __init__(self, message: str, eigenvalue: float | None = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class InfiniteDivergence(ArithmeticError):
    """Relative entropy is +inf because the support condition fails."""


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def kron_all(mats: Iterable[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats)


def pauli_string(axes: Iterable[int]) -> np.ndarray:
    """Tensor product of Pauli matrices, e.g. ``(1, 1)`` for sigma_x (x) sigma_x."""
    return kron_all(PAULI[a] for a in axes)


def num_qubits(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.ndim != 2 or rho.shape[1] != dim or dim != 1 << n or n < 1:
        raise ValueError(f"expected a 2^N x 2^N matrix, got shape {rho.shape}")
    return n


def check_density(rho: np.ndarray) -> np.ndarray:
    """Raise ``NonPhysicalStateError`` unless ``rho`` is Hermitian, unit trace and PSD."""
    num_qubits(rho)
    herm_err = np.max(np.abs(rho - rho.conj().T))
    if herm_err > HERMITIAN_TOL:
        raise NonPhysicalStateError(f"not Hermitian (max |rho - rho^dag| = {herm_err:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NonPhysicalStateError(f"trace is {tr!r}, expected 1")
    lam_min = float(np.linalg.eigvalsh(rho)[0])
    if lam_min < -PSD_TOL:
        raise NonPhysicalStateError(
            f"negative eigenvalue {lam_min:.3g}", eigenvalue=lam_min
        )
    return rho


def eigh_psd(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition with round-off negatives clamped to zero."""
    w, v = np.linalg.eigh(rho)
    if w[0] < -PSD_TOL:
        raise NonPhysicalStateError(f"negative eigenvalue {w[0]:.3g}", eigenvalue=float(w[0]))
    return np.clip(w, 0.0, None), v


def entropy_of_probs(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def binary_entropy(x: float) -> float:
    return entropy_of_probs(np.array([x, 1.0 - x]))


def vn_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits."""
    w, _ = eigh_psd(rho)
    return entropy_of_probs(w)


def rel_entropy(rho: np.ndarray, tau: np.ndarray) -> float:
    """Quantum relative entropy ``Tr[rho (log2 rho - log2 tau)]`` in bits.

    Raises ``InfiniteDivergence`` when ``rho`` has weight (> 1e-10) on an
    eigenvector of ``tau`` whose eigenvalue is below 1e-12.
    """
    _same_shape(rho, tau)
    lam, _ = eigh_psd(rho)
    mu, v = eigh_psd(tau)
    # weight of rho on each eigenvector of tau
    weights = np.real(np.einsum("ij,ik,kj->j", v.conj(), rho, v))
    null = mu < 1e-12
    if np.any(weights[null] > 1e-10):
        raise InfiniteDivergence("support of rho is not contained in support of tau")
    cross = float(np.sum(weights[~null] * np.log2(mu[~null])))
    return max(-entropy_of_probs(lam) - cross, 0.0)


def trace_distance(rho: np.ndarray, tau: np.ndarray) -> float:
    """``Tr|rho - tau|``, i.e. twice the conventional trace distance; range [0, 2]."""
    _same_shape(rho, tau)
    return float(np.sum(np.abs(np.linalg.eigvalsh(rho - tau))))


def sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    w, v = eigh_psd(rho)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(rho: np.ndarray, tau: np.ndarray) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) tau sqrt(rho)))**2``.

    The trace of the operator square root equals the nuclear norm of
    ``sqrt(rho) sqrt(tau)``, which is what gets evaluated; it is exactly
    symmetric in its arguments.
    """
    _same_shape(rho, tau)
    s = np.linalg.svd(sqrtm_psd(rho) @ sqrtm_psd(tau), compute_uv=False)
    return float(min(np.sum(s) ** 2, 1.0))


def partial_trace(rho: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Reduced state on the qubits in ``keep`` (0-based, qubit 0 is the leftmost factor)."""
    n = num_qubits(rho)
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"qubit index out of range for N={n}: {keep}")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # trace pairs from the highest index down so earlier axis numbers stay valid
    for q in sorted(traced, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + t.ndim // 2)
    d = 1 << len(keep)
    return t.reshape(d, d)


def pure_state(vec: np.ndarray) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    vec = vec / np.linalg.norm(vec)
    return np.outer(vec, vec.conj())


def maximally_mixed(n: int) -> np.ndarray:
    return np.eye(1 << n, dtype=complex) / (1 << n)


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
