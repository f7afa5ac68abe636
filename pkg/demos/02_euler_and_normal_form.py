"""The closed-form Euler decompositions and the unique 1-qubit normal form."""

import math

import numpy as np

from qc_equate import (circuit, decide_equiv_1q, eval_matrix, euler_e,
                       euler_eprime, gphase, h, nf_from_unitary, normalize_1q,
                       p, rx, x)

PI = math.pi

# Rule (E): RX(a1) P(a2) RX(a3) equals a global phase followed by P RX P,
# with the output angles computed from two intermediate complex numbers.
a1, a2, a3 = 0.8, 2.1, -0.5
params, case = euler_e(a1, a2, a3)
print(f"euler_e({a1}, {a2}, {a3}) -> case {case.tag}")
print("  betas:", [round(v, 6) for v in params])
lhs = eval_matrix(circuit(1, [rx(a1, 0), p(a2, 0), rx(a3, 0)]))
print("  |lhs - normal form| =", np.max(np.abs(lhs - params.matrix())))

# Rule (E'): two angles suffice when the middle gate is a Hadamard.
params, _ = euler_eprime(0.0, 0.0)
print("\neuler_eprime(0, 0):", [round(v, 6) for v in params],
      "(H = P(pi/2) RX(pi/2) P(pi/2))")

# On the Clifford grid the outputs stay on the grid -- closure under (E').
for a1p in (0.0, PI / 2, PI, 3 * PI / 2):
    params, _ = euler_eprime(a1p, PI / 2)
    print(f"  alpha' = ({a1p:.4f}, pi/2) ->",
          [round(v / (PI / 2), 3) for v in (params.beta1, params.beta2,
                                            params.beta3)], "quarter-turns")

# Any 1-qubit unitary has a unique normal form; nf_from_unitary inverts it.
rng = np.random.default_rng(1)
b = (rng.uniform(0, 2 * PI), rng.uniform(0, 2 * PI),
     rng.uniform(0.1, PI - 0.1), rng.uniform(0, 2 * PI))
from qc_equate import NormalFormParams
original = NormalFormParams(*map(float, b))
recovered = nf_from_unitary(original.matrix())
print("\nround trip through the unitary recovers the angles:",
      original.close_to(recovered, 1e-8))

# The normalization procedure reaches the same answer by rewriting only.
scrambled = circuit(1, [h(0), p(1.3, 0), x(0), rx(0.7, 0), gphase(2.2), h(0)])
params, deriv = normalize_1q(scrambled, emit_trace=True)
closed_form = nf_from_unitary(eval_matrix(scrambled))
print("normalize_1q agrees with the closed form:",
      params.close_to(closed_form, 1e-8),
      f"({len(deriv.steps)} rewrite steps)")

# ... which makes 1-qubit equivalence decidable.
phi = 0.9
print("decide_equiv_1q(X P(phi) X, GPHASE(phi) P(-phi)):",
      decide_equiv_1q(circuit(1, [x(0), p(phi, 0), x(0)]),
                      circuit(1, [gphase(phi), p(-phi, 0)])))
