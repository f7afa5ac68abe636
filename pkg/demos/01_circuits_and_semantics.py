"""Circuits as wire-threaded gate lists, and their matrix semantics.

Builds a few circuits by hand, composes them sequentially and in parallel,
expands the macro gates, and checks everything against dense matrices.
"""

import math

import numpy as np

from qc_equate import (Circuit, circuit, cnot, compose_par, compose_seq,
                       ctrl, deformation_equal, dest, det_arg, eval_matrix,
                       expand_macros, gphase, h, init, is_isometry, mcp, mcrx,
                       p, rx)

PI = math.pi

# A Bell-pair preparation: H on the top wire, then CNOT down.
bell = circuit(2, [h(0), cnot(0, 1)])
print("Bell preparation:")
print(np.round(eval_matrix(bell), 3))

# Sequential and parallel composition follow the prop operations.
twice = compose_seq(bell, bell)
side_by_side = compose_par(circuit(1, [h(0)]), circuit(1, [p(PI / 4, 0)]))
print("\n(H x P(pi/4)) is the Kronecker product:")
print(np.round(eval_matrix(side_by_side), 3))

# Gates on disjoint wires slide past each other: that is deformation.
a = circuit(3, [h(0), p(0.3, 2), cnot(0, 1)])
b = circuit(3, [p(0.3, 2), h(0), cnot(0, 1)])
print("\ndeformation_equal(slide P past H):", deformation_equal(a, b))
print("deformation_equal(H H vs empty):  ",
      deformation_equal(circuit(1, [h(0), h(0)]), circuit(1, [])))

# Macro gates expand to the four generators. The doubly-controlled phase
# of angle 2*pi is the identity -- the heart of the (I) rule.
ccp = circuit(3, [mcp(2 * PI, (0, 1, 2))])
print("\nMCP(2pi) on 3 wires expands to", len(expand_macros(ccp).gates),
      "primitive gates; distance from identity:",
      np.max(np.abs(eval_matrix(ccp) - np.eye(8))))

# Multi-controlled X-rotations and anti-controls are macros too.
crx = circuit(2, [mcrx(1.1, (0, 1))])
anti = circuit(2, [ctrl("0", p(0.9, 0), (0, 1))])
print("CRX(1.1) block:\n", np.round(eval_matrix(crx), 3))
print("anti-controlled P(0.9) diagonal:",
      np.round(np.diag(eval_matrix(anti)), 3))

# Ancilla wires: INIT inserts |0>, DEST projects on <0|.
born_and_dies = Circuit(1, 1, (init(0), cnot(0, 1), dest(0)))
print("\ninit-CNOT-dest collapses to:\n", np.round(eval_matrix(born_and_dies), 3))
print("init alone is an isometry:",
      is_isometry(eval_matrix(Circuit(0, 1, (init(0),)))))

# The determinant argument of a circuit, used later for minimality.
print("\ndet_arg(CNOT) =", det_arg(circuit(2, [cnot(0, 1)])), "(= pi)")
