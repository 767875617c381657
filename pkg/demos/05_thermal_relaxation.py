"""What amplitude damping does to the frozen plateau.

Adding generalized amplitude damping (T1 of several seconds) to the
dephasing tilts the L1 coherence slightly downward over half a second.
This runs the bundled sweep and writes a CSV with a metadata sidecar.
"""

import tempfile
from pathlib import Path

from frozencoh.expcli import builtin, export, run_scenario

records = run_scenario(builtin("fig1_gad"))
for r in records[::9]:
    print(f"t={r.t:.3f}  C_L1={r.values['C_L1']:.5f}  C_RE={r.values['C_RE']:.5f}")
drop = 1 - records[-1].values["C_L1"] / records[0].values["C_L1"]
print(f"L1 drop over 0.5 s: {100 * drop:.1f}%")

out = Path(tempfile.mkdtemp()) / "fig1_gad.csv"
export(records, out, "csv", scenario=builtin("fig1_gad"))
print("wrote", out, "and", out.name + ".meta.json")
