"""Site-directed rewriting and machine-checked derivation traces.

Shows a single rule application, then replays some of the shipped
derivations: the phase-group laws derived through (E), the ancilla
derivations, and the 2pi multi-control collapse from the 5CX axiom.
"""

import numpy as np

from qc_equate import (Site, Step, apply_step, circuit, eval_matrix, h, p,
                       replay, reverse_derivation)
from qc_equate.traces import (all_traces, qc_pplus, qcancilla_i3,
                              qcancilla_splus)

# One step: cancel the H pair inside H H P; the site names the gates.
c = circuit(1, [h(0), h(0), p(0.5, 0)])
step = Step("H2", "LR", (), None, Site(gates=(0, 1), wire_map=(0,)))
out = apply_step(c, step)
print("H H P(0.5)  --(H2)-->", [(g.kind, g.params) for g in out.gates])

# A derivation is an initial circuit plus steps; replay verifies each one
# numerically and checks the declared final circuit.
d = qc_pplus(0.7, 1.9)
final = replay(d, allow_lemmas=True, safety=True)
print(f"\n(P+) trace: {len(d.steps)} steps,",
      "P(0.7) P(1.9) ->", [(g.kind, [round(v, 3) for v in g.params])
                           for g in final.gates])

# Derivations reverse mechanically.
rd = reverse_derivation(d)
back = replay(rd, allow_lemmas=True)
print("reversed trace returns to:", [(g.kind, [round(v, 2) for v in g.params])
                                     for g in back.gates])

# The ancilla theory derives the global-phase group law without (S+): the
# phases ride an ancilla wire through two Euler steps.
d = qcancilla_splus(0.7, 1.1)
replay(d, allow_lemmas=True, safety=True)
print(f"\nancilla (S+) trace: {len(d.steps)} steps,",
      "GPHASE(0.7) GPHASE(1.1) -> GPHASE(1.8)")

# And the multi-control 2pi rule on 3 qubits follows from 5CX there.
d = qcancilla_i3()
replay(d, allow_lemmas=True, safety=True)
print(f"(I,3) from the ancilla axioms: {len(d.steps)} steps, uses",
      sorted({s.rule for s in d.steps}))

print("\nreplaying the whole shipped set:")
for d in all_traces():
    replay(d, allow_lemmas=True, safety=True, tol=1e-9)
    print(f"  {d.name:18s} {len(d.steps):3d} steps  ok")
