"""Distance-based coherence and correlation quantifiers.

Coherence is measured in the product eigenbasis of one Pauli axis
(``m = 1`` is the plus/minus basis, ``m = 3`` the computational basis).
Relative-entropy quantities are in bits. Bell-diagonal inputs take
closed-form shortcuts; everything else goes through a multi-start
Nelder-Mead search (see ``_optimize``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _optimize
from .qcore import (
    kron_all,
    num_qubits,
    partial_trace,
    rel_entropy,
    vn_entropy,
)
from .states import (
    CorrelationTriple,
    bd_eigenvalues,
    bd_state,
    is_bd,
    sign_patterns,
    triple_of,
)


class DistanceKind(enum.Enum):
    RELATIVE_ENTROPY = "RelativeEntropy"
    TRACE = "Trace"
    FIDELITY = "Fidelity"
    L1 = "L1"

    @property
    def tag(self) -> str:
        return {"RelativeEntropy": "RE", "Trace": "Tr", "Fidelity": "F", "L1": "L1"}[self.value]

    @classmethod
    def parse(cls, name: "str | DistanceKind") -> "DistanceKind":
        if isinstance(name, cls):
            return name
        key = str(name).lower()
        for kind in cls:
            if key in (kind.value.lower(), kind.tag.lower(), kind.name.lower()):
                return kind
        raise ValueError(f"unknown distance kind {name!r}")


RE = DistanceKind.RELATIVE_ENTROPY
TRACE = DistanceKind.TRACE
FIDELITY = DistanceKind.FIDELITY
L1 = DistanceKind.L1

CLOSED_FORM = "closed_form"
CONVERGED = "converged"
MAX_ITER = "max_iter"


@dataclass(frozen=True)
class MeasureResult:
    value: float
    optimizer_status: str = CLOSED_FORM
    closest_state: np.ndarray | None = None

    def __float__(self) -> float:
        return self.value


_SQ = 1 / np.sqrt(2)
_LOCAL_EIGENBASIS = {
    1: np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex),
    2: np.array([[_SQ, _SQ], [1j * _SQ, -1j * _SQ]], dtype=complex),
    3: np.eye(2, dtype=complex),
}


def product_basis(m: int, n: int) -> np.ndarray:
    """Unitary whose columns are the N-fold product eigenvectors of sigma_m."""
    if m not in _LOCAL_EIGENBASIS:
        raise ValueError(f"axis must be 1, 2 or 3, got {m}")
    return kron_all([_LOCAL_EIGENBASIS[m]] * n)


def in_basis(rho: np.ndarray, m: int) -> np.ndarray:
    v = product_basis(m, num_qubits(rho))
    return v.conj().T @ rho @ v


def dephase(rho: np.ndarray, m: int) -> np.ndarray:
    v = product_basis(m, num_qubits(rho))
    diag = np.real(np.diag(v.conj().T @ rho @ v))
    return (v * diag) @ v.conj().T


def _diag_state(p: np.ndarray, m: int, n: int) -> np.ndarray:
    v = product_basis(m, n)
    return (v * p) @ v.conj().T


def _offdiag_l1(mat: np.ndarray) -> float:
    return float(np.sum(np.abs(mat)) - np.sum(np.abs(np.diag(mat))))


def _trace_objective(rho_m: np.ndarray):
    def fun(y):
        p = _optimize.simplex_weights(y)
        diff = rho_m[None] - p[:, :, None] * np.eye(len(p[0]))[None]
        return np.abs(np.linalg.eigvalsh(diff)).sum(axis=1)

    return fun


def _fidelity_objective(rho_m: np.ndarray):
    def fun(y):
        s = np.sqrt(_optimize.simplex_weights(y))
        # sqrt(delta) rho sqrt(delta) for diagonal delta
        m = s[:, :, None] * rho_m[None] * s[:, None, :]
        root = np.sqrt(np.clip(np.linalg.eigvalsh(m), 0.0, None)).sum(axis=1)
        return 1.0 - root**2

    return fun


def _optimize_incoherent(rho: np.ndarray, m: int, kind: DistanceKind, seed: int) -> MeasureResult:
    n = num_qubits(rho)
    rho_m = in_basis(rho, m)
    rho_m = (rho_m + rho_m.conj().T) / 2
    fun = _trace_objective(rho_m) if kind is TRACE else _fidelity_objective(rho_m)
    guess = np.sqrt(np.clip(np.real(np.diag(rho_m)), 0, None))
    res = _optimize.minimize_multistart(fun, [guess], dim=len(guess), seed=seed)
    p = _optimize.simplex_weights(res.x[None])[0]
    return MeasureResult(
        max(res.fun, 0.0),
        CONVERGED if res.converged else MAX_ITER,
        _diag_state(p, m, n),
    )


def coherence(
    rho: np.ndarray, m: int, d: DistanceKind | str, seed: int = 0, numeric: bool = False
) -> MeasureResult:
    """Distance from ``rho`` to the nearest state diagonal in the sigma_m product basis.

    ``numeric=True`` skips the Bell-diagonal trace shortcut and always runs
    the optimizer for Trace and Fidelity (used for cross-validation).
    """
    d = DistanceKind.parse(d)
    if d is RE:
        delta = dephase(rho, m)
        return MeasureResult(max(vn_entropy(delta) - vn_entropy(rho), 0.0), CLOSED_FORM, delta)
    if d is L1:
        return MeasureResult(_offdiag_l1(in_basis(rho, m)), CLOSED_FORM)
    if d is TRACE and not numeric and is_bd(rho):
        c = triple_of(rho)
        return MeasureResult(
            _offdiag_l1(in_basis(rho, m)), CLOSED_FORM, bd_state(closest_incoherent_bd(c, m))
        )
    return _optimize_incoherent(rho, m, d, seed)


def closest_incoherent_bd(c: CorrelationTriple, m: int) -> CorrelationTriple:
    """Project a triple onto the ``c_m`` axis."""
    vals = [cj if axis == m else 0.0 for axis, cj in zip((1, 2, 3), c.as_tuple())]
    return CorrelationTriple(*vals, num_qubits=c.num_qubits)


def dominant_axis(c: CorrelationTriple) -> int:
    """Axis of largest ``|c_j|``; ties go to the higher axis index."""
    mags = [abs(x) for x in c.as_tuple()]
    top = max(mags)
    return max(axis for axis, v in zip((1, 2, 3), mags) if top - v <= 1e-12)


def _require_two_qubits(rho: np.ndarray) -> None:
    if num_qubits(rho) != 2:
        raise ValueError("this measure is defined for two-qubit states only")


def _local_rotation(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Batch of SU(2) matrices with columns forming an orthonormal qubit basis."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    u = np.empty(theta.shape + (2, 2), dtype=complex)
    u[..., 0, 0], u[..., 0, 1] = c, -s * np.conj(e)
    u[..., 1, 0], u[..., 1, 1] = s * e, c
    return u


def _classical_probs(rho: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ua = _local_rotation(x[:, 0], x[:, 1])
    ub = _local_rotation(x[:, 2], x[:, 3])
    u = np.einsum("bij,bkl->bikjl", ua, ub).reshape(-1, 4, 4)
    p = np.real(np.einsum("bji,jk,bki->bi", u.conj(), rho, u))
    return np.clip(p, 0, None), u


def quantum_correlations_re(rho: np.ndarray, seed: int = 0, numeric: bool = False) -> MeasureResult:
    """Relative entropy of discord: distance to the nearest classical-classical state.

    Bell-diagonal inputs use the axis projection unless ``numeric`` is set.
    """
    _require_two_qubits(rho)
    if not numeric and is_bd(rho):
        c = triple_of(rho)
        chi = bd_state(closest_incoherent_bd(c, dominant_axis(c)))
        return MeasureResult(rel_entropy(rho, chi), CLOSED_FORM, chi)

    # for fixed local bases the optimal joint distribution is the measured one,
    # leaving S(Pi(rho)) - S(rho) to minimise over the bases
    s_rho = vn_entropy(rho)

    def fun(x):
        p, _ = _classical_probs(rho, x)
        safe = np.where(p > 0, p, 1.0)
        return -np.sum(p * np.log2(safe), axis=1) - s_rho

    guesses = [np.array([np.pi / 2, 0, np.pi / 2, 0]), np.zeros(4), np.array([np.pi / 2, np.pi / 2] * 2)]
    res = _optimize.minimize_multistart(fun, guesses, dim=4, seed=seed)
    p, u = _classical_probs(rho, res.x[None])
    chi = (u[0] * p[0]) @ u[0].conj().T
    return MeasureResult(max(res.fun, 0.0), CONVERGED if res.converged else MAX_ITER, chi)


def mutual_information(rho: np.ndarray) -> float:
    _require_two_qubits(rho)
    return (
        vn_entropy(partial_trace(rho, [0]))
        + vn_entropy(partial_trace(rho, [1]))
        - vn_entropy(rho)
    )


def total_correlations_re(rho: np.ndarray) -> MeasureResult:
    """Distance to the nearest product state, attained by the product of marginals."""
    _require_two_qubits(rho)
    pi = np.kron(partial_trace(rho, [0]), partial_trace(rho, [1]))
    return MeasureResult(max(mutual_information(rho), 0.0), CLOSED_FORM, pi)


def classical_correlations_re(rho: np.ndarray, seed: int = 0) -> MeasureResult:
    """Distance from the closest classical state to the product states.

    With relative entropy the inner minimisation over products is solved
    by the product of the classical state's marginals (``I/4`` for
    Bell-diagonal inputs), so the value is the mutual information of the
    closest classical state.
    """
    q = quantum_correlations_re(rho, seed=seed)
    chi = q.closest_state
    return MeasureResult(max(mutual_information(chi), 0.0), q.optimizer_status, chi)


# vertices of {mu in simplex : mu_a <= 1/2}; the separable Bell-diagonal spectra
_SEPARABLE_VERTICES = np.array(
    [[0.5 if a in pair else 0.0 for a in range(4)] for pair in
     [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]]
)


def _bd_spectrum(c: CorrelationTriple) -> np.ndarray:
    # Bell-basis order follows the sign patterns of bd_eigenvalues
    return np.array([v for v, _ in bd_eigenvalues(c)])


def is_separable_bd(c: CorrelationTriple, tol: float = 1e-12) -> bool:
    return max(_bd_spectrum(c)) <= 0.5 + tol


def entanglement_re_bd(c: CorrelationTriple, seed: int = 0) -> MeasureResult:
    """Relative entropy of entanglement of a two-qubit Bell-diagonal state.

    Minimises over separable BD states (the octahedron
    ``|c1| + |c2| + |c3| <= 1``), parameterised as convex mixtures of its
    six vertices.
    """
    if c.num_qubits != 2:
        raise ValueError("entanglement_re_bd needs a two-qubit triple")
    rho = bd_state(c)
    if is_separable_bd(c):
        return MeasureResult(0.0, CLOSED_FORM, rho)
    lam = _bd_spectrum(c)
    support = lam > 0
    neg_entropy = float(np.sum(lam[support] * np.log2(lam[support])))

    def fun(y):
        mu = _optimize.simplex_weights(y) @ _SEPARABLE_VERTICES
        bad = np.any((mu <= 0) & support[None], axis=1)
        safe = np.where(mu > 0, mu, 1.0)
        val = neg_entropy - np.sum(np.where(support[None], lam * np.log2(safe), 0.0), axis=1)
        return np.where(bad, np.inf, val)

    res = _optimize.minimize_multistart(fun, [np.ones(6)], dim=6, seed=seed)
    w = _optimize.simplex_weights(res.x[None])[0]
    mu = w @ _SEPARABLE_VERTICES
    # back to a triple: mu_s = (1 + s.c') / 4 for each sign pattern s
    signs = _bd_sign_matrix()
    c_sep = signs.T @ mu
    sigma = bd_state(CorrelationTriple(*np.clip(c_sep, -1, 1), num_qubits=2))
    return MeasureResult(max(res.fun, 0.0), CONVERGED if res.converged else MAX_ITER, sigma)


def _bd_sign_matrix() -> np.ndarray:
    return np.array(list(sign_patterns(2)), dtype=float)


def global_discord_m3n(c: CorrelationTriple) -> MeasureResult:
    """Global discord of an M3_N state.

    On this family it coincides with the relative-entropy coherence in the
    plus/minus basis, which is what gets returned.
    """
    return coherence(bd_state(c), 1, RE)
