"""Who carries the coherence: quantum or classical correlations?

Before the switch time the closest classical state projects onto the c1
axis and the (relative-entropy) coherence equals the discord. Afterwards
the projection jumps to c3 and coherence matches the classical
correlations instead. Entanglement dies suddenly a little later.
"""

from frozencoh import (
    CorrelationTriple,
    NoiseClock,
    bd_state,
    classical_correlations_re,
    coherence,
    entanglement_re_bd,
    esd_time,
    evolve_triple,
    quantum_correlations_re,
    switch_time,
)
from frozencoh.measures import dominant_axis

c0 = CorrelationTriple(1.0, 0.7, -0.7)
clock = NoiseClock(t2=(0.14, 0.90))
gamma = clock.correlator_rate / 2

t_star = switch_time(c0, gamma)
t_esd = esd_time(c0, gamma)
print(f"gamma = {gamma:.5f} 1/s, switch time = {t_star:.5f} s, sudden death = {t_esd:.5f} s\n")

print(f"{'t':>6} {'axis':>4} {'C_RE':>8} {'Q_RE':>8} {'P_RE':>8} {'E_RE':>9}")
for t in (0.0, 0.02, 0.04, 0.05, 0.1, 0.2, 0.21, 0.3):
    c = evolve_triple(c0, clock, 3, t)
    rho = bd_state(c)
    print(
        f"{t:6.3f} {dominant_axis(c):>4} {coherence(rho, 1, 'RE').value:8.5f} "
        f"{quantum_correlations_re(rho).value:8.5f} {classical_correlations_re(rho).value:8.5f} "
        f"{entanglement_re_bd(c).value:9.2e}"
    )
