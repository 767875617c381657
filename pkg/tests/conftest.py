import numpy as np
import pytest
from hypothesis import settings

from frozencoh.qcore import NonPhysicalStateError
from frozencoh.states import CorrelationTriple

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_triple(rng, n=2, margin=0.0):
    """Rejection-sample a physical triple from the cube."""
    while True:
        c = rng.uniform(-1, 1, 3)
        try:
            t = CorrelationTriple(*c, num_qubits=n)
        except NonPhysicalStateError:
            continue
        if margin == 0 or min(_spectrum(t)) >= margin:
            return t


def _spectrum(t):
    from frozencoh.states import bd_eigenvalues

    return [v for v, _ in bd_eigenvalues(t)]


def random_density(rng, n=2, rank=None):
    d = 2**n
    rank = rank or d
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def haar_unitary(rng, d):
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
