"""Dense matrix semantics of circuits and the equality predicates.

A circuit n_in -> n_out evaluates to a 2^n_out x 2^n_in complex matrix.
Wire 0 is the leftmost tensor factor (most significant bit).  Vanilla
circuits evaluate to unitaries; INIT / DEST extend the semantics to |0>
insertion and <0| projection, so circuits built from them are isometries
exactly when every removed wire is in state |0>.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .circuit import Circuit, Gate, expand_gate, thread
from .errors import (DegenerateMatrix, InvalidCircuit, NotUnitary,
                     ShapeMismatch, WireCapExceeded)

SQRT2_INV = 1.0 / math.sqrt(2.0)

#: dense simulation refuses circuits wider than this many wires
DEFAULT_WIRE_CAP = 10


def wire_cap() -> int:
    return int(os.environ.get("QCEQ_WIRE_CAP", DEFAULT_WIRE_CAP))


def _gate_matrix(g: Gate) -> np.ndarray:
    if g.kind == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) * SQRT2_INV
    if g.kind == "P":
        return np.array([[1, 0], [0, np.exp(1j * g.params[0])]], dtype=complex)
    if g.kind == "CNOT":
        return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                        dtype=complex)
    if g.kind == "SWAP":
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                        dtype=complex)
    raise InvalidCircuit(f"no matrix for {g.kind}")


def eval_matrix(c: Circuit) -> np.ndarray:
    """Matrix of the circuit; macros are expanded internally."""
    thread(c)  # validate before any work
    cap = wire_cap()
    state = np.eye(2 ** c.n_in, dtype=complex)
    width = c.n_in
    if width > cap:
        raise WireCapExceeded(f"{width} wires exceeds cap {cap}")
    for g0 in c.gates:
        for g in expand_gate(g0):
            if g.kind == "GPHASE":
                state = state * np.exp(1j * g.params[0])
            elif g.kind == "INIT":
                state = _apply_init(state, width, g.wires[0])
                width += 1
                if width > cap:
                    raise WireCapExceeded(f"{width} wires exceeds cap {cap}")
            elif g.kind == "DEST":
                state = _apply_dest(state, width, g.wires[0])
                width -= 1
            else:
                state = _apply_gate(state, width, _gate_matrix(g), g.wires)
    return state


def _apply_gate(state: np.ndarray, width: int, u: np.ndarray, wires) -> np.ndarray:
    """Left-multiply by u acting on the given wires of a width-wire register."""
    k = len(wires)
    cols = state.shape[1]
    t = state.reshape((2,) * width + (cols,))
    # bring the acted-on axes to the front, in gate order
    rest = [a for a in range(width) if a not in wires]
    perm = list(wires) + rest + [width]
    t = np.transpose(t, perm)
    t = t.reshape(2 ** k, -1)
    t = u @ t
    t = t.reshape((2,) * width + (cols,))
    inv = np.argsort(perm)
    t = np.transpose(t, inv)
    return t.reshape(2 ** width, cols)


def _apply_init(state: np.ndarray, width: int, pos: int) -> np.ndarray:
    cols = state.shape[1]
    t = state.reshape((2,) * width + (cols,))
    t = np.stack([t, np.zeros_like(t)], axis=pos)  # new axis in state |0>
    return t.reshape(2 ** (width + 1), cols)


def _apply_dest(state: np.ndarray, width: int, pos: int) -> np.ndarray:
    cols = state.shape[1]
    t = state.reshape((2,) * width + (cols,))
    t = np.take(t, 0, axis=pos)  # project onto <0|
    return t.reshape(2 ** (width - 1), cols)


# -- predicates --------------------------------------------------------------

def equal_matrices(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} vs {b.shape}")
    return bool(np.max(np.abs(a - b)) <= tol) if a.size else True


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff a = lam * b for some unit scalar lam."""
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} vs {b.shape}")
    flat_b = b.ravel()
    i = int(np.argmax(np.abs(flat_b)))
    if np.abs(flat_b[i]) < 1e-12:
        raise DegenerateMatrix("cannot extract a phase from a (near-)zero matrix")
    lam = a.ravel()[i] / flat_b[i]
    mag = abs(lam)
    if abs(mag - 1.0) > max(tol, 1e-9):
        return False
    lam = lam / mag if mag > 0 else 1.0
    return bool(np.max(np.abs(a - lam * b)) <= tol)


def is_isometry(m: np.ndarray, tol: float = 1e-9) -> bool:
    gram = m.conj().T @ m
    return bool(np.max(np.abs(gram - np.eye(gram.shape[0]))) <= tol)


def is_unitary(m: np.ndarray, tol: float = 1e-9) -> bool:
    return m.shape[0] == m.shape[1] and is_isometry(m, tol)


def det_arg(c: Circuit) -> float:
    """arg(det(eval_matrix(c))) normalized to [0, 2*pi)."""
    if c.n_in != c.n_out:
        raise InvalidCircuit("det_arg needs a square (n_in = n_out) circuit")
    m = eval_matrix(c)
    d = np.linalg.det(m)
    if abs(d) < 1e-12:
        raise NotUnitary("determinant is (near-)zero; circuit is not unitary")
    a = float(np.angle(d)) % (2.0 * math.pi)
    return 0.0 if a > 2.0 * math.pi - 1e-12 else a
