"""Freezing conditions, characteristic times and the twirling lower bound."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .measures import DistanceKind, MeasureResult, coherence, product_basis
from .qcore import PAULI, kron_all, num_qubits
from .states import CorrelationTriple, bd_state, sign_patterns, triple_of

MAX_THETA_QUBITS = 4


@dataclass(frozen=True)
class FreezingPermutation:
    """``i``: axis fixed by the product constraint, ``j``: frozen-coherence
    axis, ``k``: noise axis."""

    i: int = 2
    j: int = 1
    k: int = 3

    def __post_init__(self):
        if sorted((self.i, self.j, self.k)) != [1, 2, 3]:
            raise ValueError(f"({self.i}, {self.j}, {self.k}) is not a permutation of (1, 2, 3)")


def freezing_check(c: CorrelationTriple, perm: FreezingPermutation = FreezingPermutation(), tol: float = 1e-9) -> bool:
    """Whether ``c_i = (-1)**(N/2) c_j c_k`` holds to within ``tol``."""
    sign = (-1) ** (c.num_qubits // 2)
    return abs(c[perm.i] - sign * c[perm.j] * c[perm.k]) <= tol


def switch_time(c: CorrelationTriple, gamma: float, j: int = 1, k: int = 3) -> float | None:
    """Time at which ``|c_j(t)| = |c_j(0)| exp(-2 gamma t)`` drops to ``|c_k|``.

    Returns ``None`` if ``|c_j(0)| < |c_k(0)|`` (the dominant axis never
    changes) and 0 when they start equal.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if c[k] == 0:
        raise ValueError(f"c_{k} must be nonzero")
    if c[j] == 0 or abs(c[j]) < abs(c[k]):
        return None
    return math.log(abs(c[j] / c[k])) / (2 * gamma)


def esd_time(c: CorrelationTriple, gamma: float, noise_axis: int = 3) -> float | None:
    """Entanglement sudden-death time of a two-qubit BD state under flip noise.

    The evolved state is separable once every eigenvalue
    ``(1 + s_k c_k + e (s_a c_a + s_b c_b)) / 4`` is at most 1/2, where
    ``e = exp(-2 gamma t)``. Returns 0 if the state starts separable and
    ``None`` if it only becomes separable asymptotically.
    """
    if c.num_qubits != 2:
        raise ValueError("esd_time needs a two-qubit triple")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    ck = c[noise_axis]
    others = [a for a in (1, 2, 3) if a != noise_axis]
    e_max = 1.0
    for s in sign_patterns(2):
        fixed = 1 + s[noise_axis - 1] * ck
        slope = sum(s[a - 1] * c[a] for a in others)
        if fixed + slope <= 2:
            continue
        # need fixed + e * slope <= 2 with slope > 0
        if fixed >= 2:
            return None
        e_max = min(e_max, (2 - fixed) / slope)
    if e_max >= 1.0:
        return 0.0
    return -math.log(e_max) / (2 * gamma)


def _neighbour_generators(n: int) -> list[np.ndarray]:
    gens = []
    for axis in (1, 2):
        for q in range(n - 1):
            gens.append(kron_all([PAULI[axis] if p in (q, q + 1) else PAULI[0] for p in range(n)]))
    return gens


@lru_cache(maxsize=None)
def _theta_unitaries_cached(n: int) -> tuple[np.ndarray, ...]:
    gens = _neighbour_generators(n)
    out = []
    for size in range(len(gens) + 1):
        for subset in itertools.combinations(range(len(gens)), size):
            # U_{j_m} ... U_{j_1} with j_1 < ... < j_m
            u = reduce(lambda acc, j: gens[j] @ acc, subset, np.eye(1 << n, dtype=complex))
            u.setflags(write=False)
            out.append(u)
    return tuple(out)


def theta_unitaries(n: int) -> list[np.ndarray]:
    """The ``2**(2(N-1))`` local Pauli products that twirl onto M3_N states.

    Generators are ``sigma_1 sigma_1`` and ``sigma_2 sigma_2`` on each
    adjacent pair; every subset product is listed, identity first.
    """
    if n < 2 or n % 2 or n > MAX_THETA_QUBITS:
        raise ValueError(f"theta map is provided for N in (2, 4), got {n}")
    return list(_theta_unitaries_cached(n))


def theta_map(rho: np.ndarray) -> np.ndarray:
    """Uniform average of ``U rho U^dagger`` over ``theta_unitaries``."""
    us = theta_unitaries(num_qubits(rho))
    acc = np.zeros_like(rho, dtype=complex)
    for u in us:
        acc += u @ rho @ u.conj().T
    return acc / len(us)


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def incoherent_op_check(u: np.ndarray, m: int, tol: float = 1e-10) -> bool:
    """True iff conjugation by ``u`` keeps every sigma_m basis projector diagonal."""
    if not is_unitary(u):
        raise ValueError("input is not unitary")
    v = product_basis(m, num_qubits(u))
    w = v.conj().T @ u @ v  # u in the reference basis
    for col in range(w.shape[0]):
        image = np.outer(w[:, col], w[:, col].conj())
        if np.max(np.abs(image - np.diag(np.diag(image)))) > tol:
            return False
    return True


def coherence_floor(rho: np.ndarray, m: int, d: DistanceKind | str, seed: int = 0) -> MeasureResult:
    """Coherence of the M3_N state sharing ``rho``'s correlation triple.

    Twirling by ``theta_map`` is an incoherent operation that preserves the
    triple, so this never exceeds the coherence of ``rho`` itself.
    """
    return coherence(bd_state(triple_of(rho)), m, d, seed=seed)
