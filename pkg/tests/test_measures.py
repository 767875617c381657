import numpy as np
import pytest
import scipy.optimize as so
from hypothesis import given, settings
from hypothesis import strategies as st

from frozencoh.channels import NoiseClock, apply_local, evolve_triple, flip_noise
from frozencoh.measures import (
    CLOSED_FORM,
    DistanceKind,
    classical_correlations_re,
    closest_incoherent_bd,
    coherence,
    dephase,
    dominant_axis,
    entanglement_re_bd,
    global_discord_m3n,
    product_basis,
    quantum_correlations_re,
    total_correlations_re,
)
from frozencoh.qcore import binary_entropy, fidelity, kron, pure_state, rel_entropy, trace_distance
from frozencoh.states import CorrelationTriple, bd_state, is_bd, random_state_with_triple, triple_of

from .conftest import random_density, random_triple

BD0 = CorrelationTriple(1, 0.7, -0.7)
RHO0 = bd_state(BD0)
PLATEAU = 1 - binary_entropy(0.85)
KINDS = list(DistanceKind)
STATE_KINDS = [k for k in KINDS if k is not DistanceKind.L1]


def _incoherent(rng, m, n=2):
    v = product_basis(m, n)
    p = rng.dirichlet(np.ones(2**n))
    return (v * p) @ v.conj().T


def test_plateau_constant():
    assert PLATEAU == pytest.approx(0.39016, abs=1e-5)


class TestDistanceKind:
    @pytest.mark.parametrize("name", ["RE", "relative_entropy", "Tr", "trace", "F", "L1", "l1"])
    def test_parse(self, name):
        assert isinstance(DistanceKind.parse(name), DistanceKind)

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            DistanceKind.parse("bures")


class TestDephase:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_idempotent_on_incoherent(self, rng, m):
        d = _incoherent(rng, m)
        assert np.allclose(dephase(d, m), d, atol=1e-14)

    def test_plus_minus_basis(self):
        assert np.allclose(dephase(RHO0, 1), bd_state((1, 0, 0)), atol=1e-14)

    def test_computational_basis(self):
        assert np.allclose(dephase(RHO0, 3), bd_state((0, 0, -0.7)), atol=1e-14)


class TestCoherence:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("m", [1, 3])
    def test_incoherent_zero(self, rng, kind, m):
        assert coherence(_incoherent(rng, m), m, kind).value == pytest.approx(0.0, abs=1e-7)

    def test_re_reference(self):
        res = coherence(RHO0, 1, "RE")
        assert res.value == pytest.approx(0.39016, abs=1e-5)
        assert res.optimizer_status == CLOSED_FORM

    @pytest.mark.parametrize("kind", ["L1", "Tr"])
    def test_l1_and_trace_reference(self, kind):
        assert coherence(RHO0, 1, kind).value == pytest.approx(0.7, abs=1e-12)

    def test_four_qubit_reference(self):
        rho = bd_state((1, 0.7, 0.7), num_qubits=4)
        assert coherence(rho, 1, "RE").value == pytest.approx(0.39016, abs=1e-5)
        assert coherence(rho, 1, "L1").value == pytest.approx(0.7, abs=1e-12)

    def test_trace_optimizer_four_qubits(self):
        rho = bd_state((1, 0.7, 0.7), num_qubits=4)
        assert coherence(rho, 1, "Tr", numeric=True).value == pytest.approx(0.7, abs=1e-4)

    def test_re_closed_form_matches_minimum(self, rng):
        # the dephased state is the minimiser over incoherent states
        rho = random_density(rng)
        base = coherence(rho, 1, "RE").value
        for _ in range(30):
            assert rel_entropy(rho, _incoherent(rng, 1)) >= base - 1e-12

    def test_l1_bd_formula(self, rng):
        for _ in range(20):
            c = random_triple(rng)
            want = (abs(c.c2 + c.c3) + abs(c.c2 - c.c3)) / 2
            assert coherence(bd_state(c), 1, "L1").value == pytest.approx(want, abs=1e-12)

    def test_closed_form_vs_optimizer_on_bd_states(self):
        rng = np.random.default_rng(77)
        worst = 0.0
        for _ in range(50):
            c = random_triple(rng)
            m = int(rng.integers(1, 4))
            rho = bd_state(c)
            fast = coherence(rho, m, "Tr").value
            slow = coherence(rho, m, "Tr", numeric=True)
            assert slow.value >= fast - 1e-9  # optimizer returns an upper bound
            worst = max(worst, abs(fast - slow.value))
        assert worst <= 1e-4

    @pytest.mark.parametrize("kind", ["Tr", "F"])
    def test_optimizer_vs_scipy(self, rng, kind):
        rho = random_density(rng)
        v = product_basis(1, 2)
        dist = trace_distance if kind == "Tr" else (lambda a, b: 1 - fidelity(a, b))

        def obj(y):
            p = np.exp(y - y.max())
            p /= p.sum()
            return dist(rho, (v * p) @ v.conj().T)

        best = min(so.minimize(obj, rng.normal(size=4), method="Nelder-Mead",
                               options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 20000}).fun
                   for _ in range(6))
        ours = coherence(rho, 1, kind).value
        assert ours <= best + 1e-6
        assert ours >= best - 1e-3

    @given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 3]), st.sampled_from([1, 2, 3]),
           st.sampled_from(KINDS))
    @settings(max_examples=25)
    def test_monotone_under_flip_noise(self, seed, k, m, kind):
        rng = np.random.default_rng(seed)
        rho = random_density(rng)
        clock = NoiseClock(tuple(rng.uniform(0.05, 1.0, 2)))
        out = apply_local(rho, flip_noise(clock, k, float(rng.uniform(0, 0.5))))
        assert coherence(out, m, kind).value <= coherence(rho, m, kind).value + 1e-8

    @given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 3]))
    def test_unitary_local_basis_permutation_invariance(self, seed, m):
        # conjugating by a local Pauli permutes basis states, leaving coherence unchanged
        from frozencoh.qcore import PAULI

        rng = np.random.default_rng(seed)
        rho = random_density(rng)
        flip = [a for a in (1, 2, 3) if a != m][0]
        u = kron(PAULI[flip], PAULI[0])
        rot = u @ rho @ u.conj().T
        for kind in ("RE", "L1"):
            assert coherence(rot, m, kind).value == pytest.approx(coherence(rho, m, kind).value, abs=1e-10)


class TestClosestIncoherent:
    def test_reference(self):
        assert closest_incoherent_bd(BD0, 1).as_tuple() == (1, 0, 0)

    def test_zero(self):
        for m in (1, 2, 3):
            assert closest_incoherent_bd(CorrelationTriple(0, 0, 0), m).as_tuple() == (0, 0, 0)

    def test_axis_three(self):
        assert closest_incoherent_bd(CorrelationTriple(0.3, -0.2, 0.9), 3).as_tuple() == (0, 0, 0.9)

    def test_dominant_axis_tie_goes_to_three(self):
        assert dominant_axis(CorrelationTriple(0.5, 0.1, -0.5)) == 3


def _bd_rel_entropy(c, c_chi):
    """Eigenvalue arithmetic in the shared Bell eigenbasis."""
    from frozencoh.states import sign_patterns

    total = 0.0
    for s in sign_patterns(2):
        lam = (1 + sum(si * ci for si, ci in zip(s, c))) / 4
        mu = (1 + sum(si * ci for si, ci in zip(s, c_chi))) / 4
        if lam > 0:
            total += lam * np.log2(lam / mu)
    return total


class TestQuantumCorrelations:
    def test_reference(self):
        res = quantum_correlations_re(RHO0)
        assert res.value == pytest.approx(0.39016, abs=1e-5)
        assert np.allclose(res.closest_state, bd_state((1, 0, 0)), atol=1e-14)

    def test_classical_state_zero(self, rng):
        chi = _incoherent(rng, 3)
        assert quantum_correlations_re(chi).value == pytest.approx(0.0, abs=1e-6)

    def test_classical_non_bd_state_zero(self, rng):
        # diagonal in a rotated local product basis, so generally not Bell-diagonal
        from scipy.stats import unitary_group

        u = np.kron(unitary_group.rvs(2, random_state=1), unitary_group.rvs(2, random_state=2))
        chi = u @ np.diag(rng.dirichlet(np.ones(4))) @ u.conj().T
        assert not is_bd(chi)
        assert quantum_correlations_re(chi).value == pytest.approx(0.0, abs=1e-6)

    def test_post_switch_state(self):
        c = evolve_triple(BD0, NoiseClock((0.14, 0.90)), 3, 0.25)
        res = quantum_correlations_re(bd_state(c))
        assert np.allclose(res.closest_state, bd_state((0, 0, -0.7)), atol=1e-14)
        assert res.value == pytest.approx(_bd_rel_entropy(c.as_tuple(), (0, 0, -0.7)), abs=1e-10)

    def test_closed_form_vs_optimizer(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            rho = bd_state(random_triple(rng))
            fast = quantum_correlations_re(rho).value
            assert quantum_correlations_re(rho, numeric=True).value == pytest.approx(fast, abs=1e-4)

    def test_rejects_four_qubits(self):
        with pytest.raises(ValueError):
            quantum_correlations_re(bd_state((1, 0.7, 0.7), num_qubits=4))

    def test_non_bd_bounded_by_coherences(self):
        rho = random_state_with_triple((0.95, 0.62, -0.65), 0.87, seed=4)
        q = quantum_correlations_re(rho).value
        # discord never exceeds the RE coherence in any fixed product basis
        assert q <= min(coherence(rho, m, "RE").value for m in (1, 2, 3)) + 1e-8


class TestClassicalCorrelations:
    def test_reference(self):
        assert classical_correlations_re(RHO0).value == pytest.approx(1.0, abs=1e-10)

    def test_product_state(self, rng):
        rho = kron(random_density(rng, 1), random_density(rng, 1))
        assert classical_correlations_re(rho).value == pytest.approx(0.0, abs=1e-6)

    def test_after_switch(self):
        for t in (0.1, 0.25, 0.5):
            c = evolve_triple(BD0, NoiseClock((0.14, 0.90)), 3, t)
            assert classical_correlations_re(bd_state(c)).value == pytest.approx(PLATEAU, abs=1e-10)

    def test_closest_product_is_maximally_mixed(self):
        # optimise S(chi || a x b) over product states for a BD classical chi
        chi = bd_state((0, 0, -0.7))

        def bloch(v):
            r = np.tanh(np.linalg.norm(v)) * v / (np.linalg.norm(v) + 1e-300)
            return (np.eye(2) + sum(ri * p for ri, p in zip(r, _PAULIS))) / 2

        def obj(x):
            return rel_entropy(chi, kron(bloch(x[:3]), bloch(x[3:])))

        rng = np.random.default_rng(0)
        best = min(so.minimize(obj, rng.normal(scale=0.5, size=6), method="Nelder-Mead").fun for _ in range(5))
        assert best >= classical_correlations_re(chi).value - 1e-8
        assert best == pytest.approx(PLATEAU, abs=1e-5)


_PAULIS = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]


class TestTotalCorrelations:
    def test_maximally_mixed(self):
        assert total_correlations_re(np.eye(4) / 4).value == pytest.approx(0.0, abs=1e-12)

    def test_reference(self):
        assert total_correlations_re(RHO0).value == pytest.approx(1.39016, abs=1e-5)

    def test_bell_state(self):
        bell = pure_state(np.array([1, 0, 0, 1]) / np.sqrt(2))
        assert total_correlations_re(bell).value == pytest.approx(2.0, abs=1e-10)

    def test_product_of_marginals_is_optimal(self, rng):
        rho = random_density(rng)
        base = total_correlations_re(rho).value
        for _ in range(20):
            pi = kron(random_density(rng, 1), random_density(rng, 1))
            assert rel_entropy(rho, pi) >= base - 1e-12

    def test_hierarchy(self, rng):
        for _ in range(10):
            rho = bd_state(random_triple(rng))
            t = total_correlations_re(rho).value
            assert quantum_correlations_re(rho).value <= t + 1e-10
            assert classical_correlations_re(rho).value <= t + 1e-10


class TestEntanglement:
    def test_separable_zero(self):
        res = entanglement_re_bd(CorrelationTriple(0, 0, -0.7))
        assert res.value == 0.0

    def test_reference(self):
        assert entanglement_re_bd(BD0).value == pytest.approx(PLATEAU, abs=1e-6)

    def test_werner_closed_form(self):
        # Werner-like BD states: E = 1 - H2(F) with F the singlet fidelity
        for f in (0.6, 0.75, 0.9):
            c = CorrelationTriple(*(-(4 * f - 1) / 3,) * 3)
            assert entanglement_re_bd(c).value == pytest.approx(1 - binary_entropy(f), abs=1e-6)

    def test_closest_state_is_separable_bd(self):
        res = entanglement_re_bd(BD0)
        c = triple_of(res.closest_state)
        assert abs(c.c1) + abs(c.c2) + abs(c.c3) <= 1 + 1e-8
        assert rel_entropy(RHO0, res.closest_state) == pytest.approx(res.value, abs=1e-8)

    def test_sudden_death(self):
        clock = NoiseClock((0.14, 0.90))
        assert entanglement_re_bd(evolve_triple(BD0, clock, 3, 0.2102)).value < 1e-9
        assert entanglement_re_bd(evolve_triple(BD0, clock, 3, 0.2)).value > 1e-6

    def test_rejects_four_qubits(self):
        with pytest.raises(ValueError):
            entanglement_re_bd(CorrelationTriple(1, 0.7, 0.7, num_qubits=4))

    def test_general_separable_spot_check(self):
        # coarse search over mixtures of four product pure states cannot beat the BD optimum
        rho = RHO0

        def ket(th, ph):
            return np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)])

        def obj(x):
            w = np.exp(x[:4] - x[:4].max())
            w /= w.sum()
            sigma = sum(
                wi * pure_state(np.kron(ket(*x[4 + 4 * i: 6 + 4 * i]), ket(*x[6 + 4 * i: 8 + 4 * i])))
                for i, wi in enumerate(w)
            )
            sigma = 0.999 * sigma + 0.001 * np.eye(4) / 4
            return rel_entropy(rho, sigma)

        rng = np.random.default_rng(3)
        best = min(so.minimize(obj, rng.normal(size=20), method="Powell").fun for _ in range(4))
        assert best >= entanglement_re_bd(BD0).value - 1e-6


class TestGlobalDiscord:
    def test_zero(self):
        assert global_discord_m3n(CorrelationTriple(0, 0, 0)).value == pytest.approx(0.0, abs=1e-12)

    def test_four_qubits(self):
        c = CorrelationTriple(1, 0.7, 0.7, num_qubits=4)
        rho = bd_state(c)
        from frozencoh.qcore import vn_entropy

        assert vn_entropy(rho) == pytest.approx(2.60984, abs=1e-5)
        assert global_discord_m3n(c).value == pytest.approx(0.39016, abs=1e-5)

    def test_two_qubits_equals_coherence(self):
        assert global_discord_m3n(BD0).value == pytest.approx(coherence(RHO0, 1, "RE").value, abs=1e-14)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20)
def test_measures_nonnegative(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, rank=int(rng.integers(1, 5)))
    for kind in KINDS:
        assert coherence(rho, int(rng.integers(1, 4)), kind).value >= -1e-9
    assert total_correlations_re(rho).value >= -1e-9
