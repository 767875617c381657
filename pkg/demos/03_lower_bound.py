"""A coherence floor for states that are not Bell-diagonal.

Any two-qubit state can be twirled onto the Bell-diagonal family without
changing its correlation triple, and the twirl is an incoherent
operation. The Bell-diagonal partner therefore bounds the coherence from
below. Here we build random states sharing the triple (0.95, 0.62, -0.65)
and compare.
"""

from frozencoh import NoiseClock, apply_local, coherence, coherence_floor, random_state_with_triple
from frozencoh.channels import flip_noise
from frozencoh.states import purity

triple = (0.95, 0.62, -0.65)
clock = NoiseClock(t2=(0.14, 0.90))

for seed, scale in ((1, 0.8672), (2, 0.8849)):
    rho0 = random_state_with_triple(triple, scale, seed=seed)
    print(f"seed {seed}: purity {purity(rho0):.3f}")
    for t in (0.0, 0.1, 0.3):
        rho = apply_local(rho0, flip_noise(clock, 3, t))
        row = []
        for kind in ("RE", "L1", "Tr", "F"):
            c, f = coherence(rho, 1, kind).value, coherence_floor(rho, 1, kind).value
            row.append(f"{kind}: {c:.3f} >= {f:.3f}")
        print(f"  t={t:.1f}  " + "   ".join(row))
