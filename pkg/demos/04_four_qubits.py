"""Four qubits: the same freezing, now with c2 = +c1 c3.

For N = 4 the sign in the freezing condition flips. The Kraus engine
evolves the full 16x16 density matrix and we check it against the
analytic correlator decay while the coherence stays put.
"""

import numpy as np

from frozencoh import CorrelationTriple, NoiseClock, apply_local, bd_state, coherence, evolve_triple, triple_of
from frozencoh.channels import flip_noise
from frozencoh.measures import global_discord_m3n

c0 = CorrelationTriple(1.0, 0.7, 0.7, num_qubits=4)
clock = NoiseClock(t2=(0.16,) * 4)  # collective correlator decay time 0.04 s
rho0 = bd_state(c0)

for t in np.linspace(0, 0.12, 5):
    rho = apply_local(rho0, flip_noise(clock, 3, t))
    kraus, analytic = triple_of(rho), evolve_triple(c0, clock, 3, t)
    gap = max(abs(a - b) for a, b in zip(kraus.as_tuple(), analytic.as_tuple()))
    print(
        f"t={t:.2f}  c1={kraus.c1:.4f}  |kraus-analytic|={gap:.1e}  "
        f"C_RE={coherence(rho, 1, 'RE').value:.5f}  C_L1={coherence(rho, 1, 'L1').value:.3f}  "
        f"GD={global_discord_m3n(kraus).value:.5f}"
    )
