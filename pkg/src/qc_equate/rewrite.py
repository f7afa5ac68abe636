"""Rule application, derivation traces, replay, and 1-qubit decision procedures.

A rewrite step names a rule (axiom, derived lemma, or macro definition), a
direction, parameters, and a site: explicit gate indices plus a map from
rule wires to circuit wire positions.  Matching is site-directed; the
engine verifies that the selected gates can be commuted into a contiguous
block and are deformation-equal to the instantiated source side, then
splices in the target side.  A safety net re-checks the semantics of every
accepted step numerically.

Sites for rules whose sides create or destroy wires (A, AP, ACX) require a
spatially monotone wire map: rule wire order must agree with the circuit's
wire order at the site.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .circuit import (ANGLE_EPS, Circuit, Gate, deformation_equal, dest, init,
                      reduce_angle, thread)
from .errors import (ArityMismatch, BadArity, IllegalSite, NoMatch, QcError,
                     SemanticDrift, UnknownLemma, UnknownTheory)
from .euler import NormalFormParams, _pack, euler_eprime
from .semantics import equal_matrices, eval_matrix, wire_cap
from .theories import (DEFINITIONAL, RuleId, RuleInstance, _CATALOG,
                       instantiate, lemma_instantiate)

_STRUCT = -1  # pseudo wire id shared by all INIT/DEST gates (order bookkeeping)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Site:
    """Where a rule fires: gate indices and the rule-wire -> position map.

    ``wire_map[i]`` is the position of rule wire ``i`` in the frame where
    the selected block assembles: just before the first selected gate,
    after any unselected INIT/DEST in the window have been commuted out of
    the way.  When no gates are selected (empty source side), the block is
    spliced in front of gate ``at``.
    """

    gates: tuple[int, ...] = ()
    wire_map: tuple[int, ...] = ()
    at: int = 0

    def to_dict(self) -> dict:
        return {"gates": list(self.gates), "wire_map": list(self.wire_map), "at": self.at}

    @staticmethod
    def from_dict(d: dict) -> "Site":
        return Site(tuple(d.get("gates", ())), tuple(d.get("wire_map", ())),
                    int(d.get("at", 0)))


@dataclass(frozen=True)
class Step:
    rule: str
    direction: str          # "LR" or "RL"
    params: tuple[float, ...] = ()
    n: int | None = None
    site: Site = Site()

    def to_dict(self) -> dict:
        return {"rule": self.rule, "direction": self.direction,
                "params": list(self.params), "n": self.n,
                "site": self.site.to_dict()}

    @staticmethod
    def from_dict(d: dict) -> "Step":
        return Step(d["rule"], d["direction"], tuple(d.get("params", ())),
                    d.get("n"), Site.from_dict(d.get("site", {})))


@dataclass
class Derivation:
    theory: str
    initial: Circuit
    steps: list[Step]
    final: Circuit
    name: str = ""

    def to_dict(self) -> dict:
        d = {"theory": self.theory, "initial": self.initial.to_dict(),
             "steps": [s.to_dict() for s in self.steps], "final": self.final.to_dict()}
        if self.name:
            d["name"] = self.name
        return d

    @staticmethod
    def from_dict(d: dict) -> "Derivation":
        return Derivation(d["theory"], Circuit.from_dict(d["initial"]),
                          [Step.from_dict(s) for s in d["steps"]],
                          Circuit.from_dict(d["final"]), d.get("name", ""))


def resolve_rule(theory: str, name: str, params, n, allow_lemmas: bool) -> RuleInstance:
    """Axioms of the theory first, then macro definitions, then lemmas."""
    if theory not in _CATALOG:
        raise UnknownTheory(f"no theory {theory!r}")
    if name in _CATALOG[theory]:
        return instantiate(RuleId(theory, name), params, n)
    if name in DEFINITIONAL:
        return lemma_instantiate(name, params, n)
    if allow_lemmas:
        return lemma_instantiate(name, params, n)
    raise UnknownLemma(f"{name} is not an axiom of {theory} "
                       "(derived lemmas need allow_lemmas)")


# -- id-level circuit view ----------------------------------------------------

@dataclass
class _IdGate:
    kind: str
    ids: tuple[int, ...]
    params: tuple[float, ...]
    pattern: str
    base: Gate | None

    def gate_with_wires(self, wires: tuple[int, ...]) -> Gate:
        return Gate(self.kind, wires, self.params, self.pattern, self.base)

    def dep_ids(self) -> tuple[int, ...]:
        if self.kind in ("INIT", "DEST"):
            return self.ids + (_STRUCT,)
        return self.ids


class _IdCircuit:
    """Gate list over stable wire ids, with a total spatial order (keys)."""

    def __init__(self, c: Circuit):
        th = thread(c)
        self.n_in = c.n_in
        self.n_out = c.n_out
        self.key: dict[int, Fraction] = {i: Fraction(i) for i in range(c.n_in)}
        self.gates: list[_IdGate] = []
        open_ids = list(range(c.n_in))
        for g, ids in zip(c.gates, th.gate_ids):
            if g.kind == "INIT":
                pos = g.wires[0]
                lo = self.key[open_ids[pos - 1]] if pos > 0 else None
                hi = self.key[open_ids[pos]] if pos < len(open_ids) else None
                self.key[ids[0]] = self.key_between(lo, hi)
                open_ids.insert(pos, ids[0])
            elif g.kind == "DEST":
                open_ids.remove(ids[0])
            self.gates.append(_IdGate(g.kind, ids, g.params, g.pattern, g.base))
        self._next_id = th.n_ids

    def key_between(self, lo: Fraction | None, hi: Fraction | None) -> Fraction:
        if lo is None and hi is None:
            cand = Fraction(0)
        elif lo is None:
            cand = hi - 1
        elif hi is None:
            cand = lo + 1
        else:
            cand = Fraction(lo + hi, 2)
        taken = set(self.key.values())
        step = Fraction(1, 2)
        while cand in taken:
            cand = cand - step if hi is None else cand + step * (hi - cand)
            step /= 2
        return cand

    def fresh_id(self, key: Fraction) -> int:
        wid = self._next_id
        self._next_id += 1
        self.key[wid] = key
        return wid

    def frames(self) -> list[list[int]]:
        """Alive wire ids (spatial order) before each gate, plus the final frame."""
        alive = sorted(range(self.n_in), key=lambda i: self.key[i])
        out = [list(alive)]
        for g in self.gates:
            if g.kind == "INIT":
                keys = [self.key[a] for a in alive]
                alive.insert(bisect_left(keys, self.key[g.ids[0]]), g.ids[0])
            elif g.kind == "DEST":
                alive.remove(g.ids[0])
            out.append(list(alive))
        return out

    def to_circuit(self) -> Circuit:
        alive = sorted(range(self.n_in), key=lambda i: self.key[i])
        gates: list[Gate] = []
        for g in self.gates:
            if g.kind == "INIT":
                keys = [self.key[a] for a in alive]
                pos = bisect_left(keys, self.key[g.ids[0]])
                gates.append(init(pos))
                alive.insert(pos, g.ids[0])
            elif g.kind == "DEST":
                pos = alive.index(g.ids[0])
                gates.append(dest(pos))
                alive.pop(pos)
            else:
                gates.append(g.gate_with_wires(tuple(alive.index(i) for i in g.ids)))
        return Circuit(self.n_in, self.n_out, tuple(gates))


def _rule_side_ids(side: Circuit):
    """Thread a rule side over abstract labels 0..n_in-1, fresh for INITs.

    Returns (idgates, created labels in birth order, output labels).
    """
    th = thread(side)
    idgates = [_IdGate(g.kind, ids, g.params, g.pattern, g.base)
               for g, ids in zip(side.gates, th.gate_ids)]
    created = [ids[0] for g, ids in zip(side.gates, th.gate_ids) if g.kind == "INIT"]
    return idgates, created, list(th.output_ids)


# -- step application ---------------------------------------------------------

@dataclass
class ApplyResult:
    circuit: Circuit
    reverse_site: Site


def apply_step(c: Circuit, step: Step, theory: str = "QC",
               allow_lemmas: bool = True, safety: bool = True,
               tol: float = 1e-9) -> Circuit:
    return apply_step_full(c, step, theory, allow_lemmas, safety, tol).circuit


def apply_step_full(c: Circuit, step: Step, theory: str = "QC",
                    allow_lemmas: bool = True, safety: bool = True,
                    tol: float = 1e-9) -> ApplyResult:
    if step.direction not in ("LR", "RL"):
        raise NoMatch(f"bad direction {step.direction!r}")
    inst = resolve_rule(theory, step.rule, step.params, step.n, allow_lemmas)
    src, dst = (inst.lhs, inst.rhs) if step.direction == "LR" else (inst.rhs, inst.lhs)

    idc = _IdCircuit(c)
    frames = idc.frames()
    sel = tuple(step.site.gates)
    if len(sel) != len(set(sel)) or any(not 0 <= i < len(idc.gates) for i in sel):
        raise NoMatch("site gate indices out of range or repeated")
    if len(sel) != len(src.gates):
        raise NoMatch(f"site selects {len(sel)} gates, source side has {len(src.gates)}")
    sel = tuple(sorted(sel))
    anchor = sel[0] if sel else step.site.at
    if not 0 <= anchor <= len(idc.gates):
        raise NoMatch("splice index out of range")

    before, after = _partition_block(idc, sel)

    # the block assembles after the floats-before; resolve wire positions in
    # that effective frame (floats may include INIT/DEST)
    frame = list(frames[anchor])
    for i in before:
        g = idc.gates[i]
        if g.kind == "INIT":
            keys = [idc.key[a] for a in frame]
            frame.insert(bisect_left(keys, idc.key[g.ids[0]]), g.ids[0])
        elif g.kind == "DEST":
            frame.remove(g.ids[0])
    if len(step.site.wire_map) != src.n_in:
        raise NoMatch(f"wire_map has {len(step.site.wire_map)} entries, "
                      f"rule has {src.n_in} input wires")
    for pos in step.site.wire_map:
        if not 0 <= pos < len(frame):
            raise NoMatch(f"wire_map position {pos} out of range at the site frame")
    wire_ids = [frame[pos] for pos in step.site.wire_map]
    if len(set(wire_ids)) != len(wire_ids):
        raise NoMatch("wire_map is not injective")

    structural = any(g.kind in ("INIT", "DEST") for g in src.gates + dst.gates)
    if structural and any(idc.key[a] >= idc.key[b]
                          for a, b in zip(wire_ids, wire_ids[1:])):
        raise IllegalSite("rules with INIT/DEST need a spatially monotone wire map")
    bound_created = _match_source(idc, src, sel, wire_ids)
    repl = _build_replacement(idc, src, dst, wire_ids, bound_created)

    window_pre = idc.gates[:anchor]
    window_post = idc.gates[sel[-1] + 1:] if sel else idc.gates[anchor:]
    new_gates = (window_pre + [idc.gates[i] for i in before] + repl
                 + [idc.gates[i] for i in after] + window_post)
    idc.gates = new_gates
    out = idc.to_circuit()

    # site for the reverse step: the replacement block in the new circuit
    start = anchor + len(before)
    rev_gates = tuple(range(start, start + len(repl)))
    rev_frame = _IdCircuit(out).frames()[start]
    rev_map = tuple(rev_frame.index(w) for w in wire_ids)
    rev_site = Site(rev_gates, rev_map, start)

    if safety:
        _safety_check(c, out, tol)
    return ApplyResult(out, rev_site)


def _partition_block(idc: _IdCircuit, sel: tuple[int, ...]):
    """Split the window between the selected gates into before/after floats."""
    if not sel:
        return [], []
    sel_set = set(sel)
    block_ids: set[int] = set()
    after_ids: set[int] = set()
    before, after = [], []
    for i in range(sel[0], sel[-1] + 1):
        g = idc.gates[i]
        deps = set(g.dep_ids())
        if i in sel_set:
            if deps & after_ids:
                raise IllegalSite("selected gates cannot be commuted into a block")
            block_ids |= deps
        elif deps & (block_ids | after_ids):
            after.append(i)
            after_ids |= deps
        else:
            before.append(i)
    return before, after


def _match_source(idc: _IdCircuit, src: Circuit, sel: tuple[int, ...],
                  wire_ids: list[int]) -> list[int]:
    """Check the selected block is deformation-equal to the source side.

    Returns the circuit ids bound to the source side's INIT-created wires,
    in birth order.
    """
    label_of = {wid: i for i, wid in enumerate(wire_ids)}
    created: list[int] = []
    local_alive: list[int] = list(wire_ids)          # spatial order (monotone map)
    local_gates: list[Gate] = []
    for i in sel:
        g = idc.gates[i]
        if g.kind == "INIT":
            wid = g.ids[0]
            created.append(wid)
            label_of[wid] = src.n_in + len(created) - 1
            keys = [idc.key[a] for a in local_alive]
            pos = bisect_left(keys, idc.key[wid])
            local_alive.insert(pos, wid)
            local_gates.append(init(pos))
        elif g.kind == "DEST":
            wid = g.ids[0]
            if wid not in label_of or wid not in local_alive:
                raise NoMatch("site DEST acts outside the mapped wires")
            local_gates.append(dest(local_alive.index(wid)))
            local_alive.remove(wid)
        else:
            if any(wid not in label_of or wid not in local_alive for wid in g.ids):
                raise NoMatch("selected gate touches a wire outside the map")
            local_gates.append(
                g.gate_with_wires(tuple(local_alive.index(wid) for wid in g.ids)))
    try:
        local = Circuit(src.n_in, src.n_out, tuple(local_gates))
    except QcError as exc:
        raise NoMatch(f"selected block does not thread like the rule side: {exc}")
    if not deformation_equal(local, src):
        raise NoMatch("selected block is not deformation-equal to the rule side")
    return created


def _build_replacement(idc: _IdCircuit, src: Circuit, dst: Circuit,
                       wire_ids: list[int], bound_created: list[int]) -> list[_IdGate]:
    """Id-level gates for the target side."""
    _, src_created, src_out = _rule_side_ids(src)
    dst_gates, _, dst_out = _rule_side_ids(dst)
    id_of: dict[int, int] = {i: wid for i, wid in enumerate(wire_ids)}
    for lab, wid in zip(src_created, bound_created):
        id_of[lab] = wid
    out_ids = [id_of[lab] for lab in src_out]

    dst_map: dict[int, int] = {i: wid for i, wid in enumerate(wire_ids)}
    for pos, lab in enumerate(dst_out):
        if lab >= dst.n_in:
            dst_map[lab] = out_ids[pos]   # boundary wire shared by both sides

    repl: list[_IdGate] = []
    local_alive = [dst_map[i] for i in range(dst.n_in)]
    for g, rg in zip(dst.gates, dst_gates):
        if rg.kind == "INIT":
            lab = rg.ids[0]
            rulepos = g.wires[0]
            if lab not in dst_map:
                lo = idc.key[local_alive[rulepos - 1]] if rulepos > 0 else None
                hi = (idc.key[local_alive[rulepos]]
                      if rulepos < len(local_alive) else None)
                if lo is None and hi is None and idc.key:
                    hi = min(idc.key.values())   # anchor-free: insert on top
                dst_map[lab] = idc.fresh_id(idc.key_between(lo, hi))
            wid = dst_map[lab]
            local_alive.insert(rulepos, wid)
            repl.append(_IdGate("INIT", (wid,), (), "", None))
        elif rg.kind == "DEST":
            wid = dst_map[rg.ids[0]]
            local_alive.remove(wid)
            repl.append(_IdGate("DEST", (wid,), (), "", None))
        else:
            repl.append(_IdGate(rg.kind, tuple(dst_map[lab] for lab in rg.ids),
                                rg.params, rg.pattern, rg.base))
    return repl


def _safety_check(before: Circuit, after: Circuit, tol: float):
    width = max(before.n_in, before.n_out, after.n_in, after.n_out)
    if width > wire_cap():
        return
    if not equal_matrices(eval_matrix(before), eval_matrix(after), tol):
        raise SemanticDrift("rewrite changed the semantics (engine bug)")


# -- replay -------------------------------------------------------------------

def replay(d: Derivation, allow_lemmas: bool = False, safety: bool = True,
           tol: float = 1e-9) -> Circuit:
    """Fold the steps over the initial circuit; verify the declared final."""
    c = d.initial
    for i, step in enumerate(d.steps):
        try:
            c = apply_step(c, step, d.theory, allow_lemmas, safety, tol)
        except QcError as exc:
            raise type(exc)(f"step {i} ({step.rule} {step.direction}): {exc}") from exc
    if not deformation_equal(c, d.final):
        raise NoMatch("replayed circuit is not deformation-equal to the declared final")
    return c


def reverse_derivation(d: Derivation, name: str = "") -> Derivation:
    """The same derivation run backwards (directions flipped, sites rebuilt).

    A reversed step restores its predecessor only up to deformation, which
    can shift the gate indices later reversed steps refer to; each reversed
    site is therefore validated against the recorded intermediate circuit
    and re-anchored with a site scan when the naive indices drift.
    """
    c = d.initial
    fwd: list[tuple[Step, Circuit, Site]] = []
    for step in d.steps:
        res = apply_step_full(c, step, d.theory, allow_lemmas=True, safety=False)
        fwd.append((step, c, res.reverse_site))
        c = res.circuit

    rev_steps: list[Step] = []
    cur = c
    for step, target, rsite in reversed(fwd):
        flipped = "RL" if step.direction == "LR" else "LR"
        cand = Step(step.rule, flipped, step.params, step.n, rsite)
        nxt = _try_step(cur, cand, d.theory, target)
        if nxt is None:
            cand, nxt = _reanchor(cur, step, flipped, d.theory, target, rsite)
        rev_steps.append(cand)
        cur = nxt
    return Derivation(d.theory, d.final, rev_steps, d.initial,
                      name=name or (d.name + "_reversed" if d.name else ""))


def _try_step(c: Circuit, step: Step, theory: str, target: Circuit):
    try:
        out = apply_step(c, step, theory, allow_lemmas=True, safety=False)
    except QcError:
        return None
    return out if deformation_equal(out, target) else None


def _reanchor(c: Circuit, step: Step, direction: str, theory: str,
              target: Circuit, rsite: Site):
    """Find a site for the flipped step that lands on the recorded circuit."""
    inst = resolve_rule(theory, step.rule, step.params, step.n, True)
    src = inst.lhs if direction == "LR" else inst.rhs
    if len(src.gates) == 0:
        for at in range(len(c.gates) + 1):
            cand = Step(step.rule, direction, step.params, step.n,
                        Site((), rsite.wire_map, at))
            out = _try_step(c, cand, theory, target)
            if out is not None:
                return cand, out
    else:
        for site in find_sites(c, step.rule, step.params, step.n,
                               direction, theory):
            cand = Step(step.rule, direction, step.params, step.n, site)
            out = _try_step(c, cand, theory, target)
            if out is not None:
                return cand, out
    raise NoMatch(f"cannot reverse step {step.rule} {step.direction}")


def concat_derivations(a: Derivation, b: Derivation, name: str = "") -> Derivation:
    if not deformation_equal(a.final, b.initial):
        raise ArityMismatch("derivations do not chain")
    return Derivation(a.theory, a.initial, a.steps + b.steps, b.final, name=name)


# -- convenience site scan ----------------------------------------------------

def find_sites(c: Circuit, rule: str, params=(), n: int | None = None,
               direction: str = "LR", theory: str = "QC",
               allow_lemmas: bool = True) -> list[Site]:
    """Best-effort site scan.

    The non-phase part of the source side is matched against contiguous
    windows of the circuit's non-phase gate subsequence; GPHASE gates are
    0-wire and freely movable, so they are bound anywhere by value.  Every
    candidate is validated by actually applying the step.
    """
    from .circuit import angles_equal

    inst = resolve_rule(theory, rule, params, n, allow_lemmas)
    src = inst.lhs if direction == "LR" else inst.rhs
    idc = _IdCircuit(c)
    frames = idc.frames()
    hits: list[Site] = []
    if len(src.gates) == 0:
        return hits
    src_gates, _, _ = _rule_side_ids(src)
    src_wire = [rg for rg in src_gates if rg.kind != "GPHASE"]
    src_phase = [rg for rg in src_gates if rg.kind == "GPHASE"]
    wire_idx = [i for i, g in enumerate(idc.gates) if g.kind != "GPHASE"]
    phase_idx = [i for i, g in enumerate(idc.gates) if g.kind == "GPHASE"]

    def bind_phases(chosen: list[int]) -> list[int] | None:
        used: list[int] = []
        for rg in src_phase:
            for i in phase_idx:
                if i in used or i in chosen:
                    continue
                if angles_equal(idc.gates[i].params[0], rg.params[0]):
                    used.append(i)
                    break
            else:
                return None
        return used

    k = len(src_wire)
    windows = ([[]] if k == 0 else
               [wire_idx[s:s + k] for s in range(len(wire_idx) - k + 1)])
    for window in windows:
        assign: dict[int, int] = {}
        ok = True
        for rg, i in zip(src_wire, window):
            g = idc.gates[i]
            if g.kind != rg.kind or len(g.ids) != len(rg.ids):
                ok = False
                break
            for lab, wid in zip(rg.ids, g.ids):
                if assign.get(lab, wid) != wid:
                    ok = False
                    break
                assign[lab] = wid
            if not ok:
                break
        if not ok or len(set(assign.values())) != len(assign):
            continue
        phases = bind_phases(window)
        if phases is None:
            continue
        sel = tuple(sorted(window + phases))
        anchor = sel[0] if sel else 0
        frame = frames[anchor]
        try:
            wire_map = tuple(frame.index(assign[lab]) for lab in range(src.n_in))
        except (KeyError, ValueError):
            continue
        site = Site(sel, wire_map, anchor)
        try:
            apply_step_full(c, Step(rule, direction, tuple(params), n, site),
                            theory, allow_lemmas=True, safety=False)
        except QcError:
            continue
        hits.append(site)
    return hits


# -- 1-qubit normalization ----------------------------------------------------

def normalize_1q(c: Circuit, emit_trace: bool = False, theory: str = "QC"):
    """Bring a 1-qubit circuit to the normal form GPHASE.P.RX.P.

    Returns (NormalFormParams, Derivation or None).  The QC procedure
    eliminates H via (EH) and contracts RX.P.RX blocks with (E); the
    QCprime variant does the same work from (E') and (P+), solving for the
    phase split that makes two (E') applications close.
    """
    if c.n_in != 1 or c.n_out != 1:
        raise BadArity("normalize_1q needs a 1-in 1-out circuit")
    if any(g.kind in ("INIT", "DEST") for g in c.gates):
        raise BadArity("normalize_1q does not accept INIT/DEST")
    nz = _Normalizer(c, theory, emit_trace)
    params = nz.run()
    if emit_trace:
        return params, Derivation(theory, c, nz.steps, nz.c, name="normalize_1q")
    return params, None


def decide_equiv_1q(c1: Circuit, c2: Circuit, tol: float = 1e-8) -> bool:
    """Completeness-based equality test: compare normal-form parameters."""
    p1, _ = normalize_1q(c1)
    p2, _ = normalize_1q(c2)
    return p1.close_to(p2, tol)


def _is_zero_mod(v: float, period: float, tol: float = ANGLE_EPS) -> bool:
    r = math.fmod(v, period)
    if r < 0:
        r += period
    return r <= tol or period - r <= tol


class _Normalizer:
    """Stateful driver emitting verified steps (all applied via apply_step)."""

    def __init__(self, c: Circuit, theory: str, emit: bool):
        self.c = c
        self.theory = theory
        self.emit = emit
        self.steps: list[Step] = []

    def do(self, rule: str, direction: str, params=(), n: int | None = None,
           site: Site = Site()):
        step = Step(rule, direction, tuple(float(v) for v in params), n, site)
        self.c = apply_step(self.c, step, self.theory, allow_lemmas=True,
                            safety=False)
        if self.emit:
            self.steps.append(step)

    def gate(self, i: int) -> Gate:
        return self.c.gates[i]

    def wire_gates(self) -> list[int]:
        return [i for i, g in enumerate(self.c.gates) if g.kind != "GPHASE"]

    def phase_gates(self) -> list[int]:
        return [i for i, g in enumerate(self.c.gates) if g.kind == "GPHASE"]

    def find_word(self, kinds: tuple[str, ...], pred=None) -> tuple[int, ...] | None:
        """First run of consecutive wire gates matching the kind word."""
        w = self.wire_gates()
        for j in range(len(w) - len(kinds) + 1):
            gs = [self.gate(w[j + t]) for t in range(len(kinds))]
            if all(g.kind == k for g, k in zip(gs, kinds)) and (
                    pred is None or pred(gs)):
                return tuple(w[j + t] for t in range(len(kinds)))
        return None

    # -- high level ----------------------------------------------------------

    def run(self) -> NormalFormParams:
        self._unfold_macros()
        self._strip_hadamards()
        self._reduce()
        return self._shape_and_read()

    def _unfold_macros(self):
        changed = True
        while changed:
            changed = False
            for i, g in enumerate(self.c.gates):
                if g.kind == "X":
                    self.do("XDEF", "LR", site=Site((i,), (0,)))
                elif g.kind == "Z":
                    self.do("ZDEF", "LR", site=Site((i,), (0,)))
                elif g.kind == "MCP":
                    self.do("MCPDEF", "LR", (g.params[0],), 1, Site((i,), (0,)))
                elif g.kind == "MCRX":
                    self.do("MCRXDEF", "LR", (g.params[0],), 1, Site((i,), (0,)))
                else:
                    continue
                changed = True
                break

    def _strip_hadamards(self):
        while True:
            hs = [i for i, g in enumerate(self.c.gates) if g.kind == "H"]
            if not hs:
                return
            i = hs[0]
            if self.theory == "QC":
                self.do("EH", "LR", site=Site((i,), (0,)))
            else:
                self._mint_rx0(i)          # RX(0) lands just before the H
                self._mint_rx0(i + 2)      # and just after it
                self.do("EPRIME", "LR", (0.0, 0.0),
                        site=Site((i, i + 1, i + 2), (0,)))

    def _mint_rx0(self, at: int):
        """Insert RX(0) at gate index ``at`` using axioms and definitions."""
        self.do("S2PI", "RL", site=Site((), (), 0))        # GPHASE(2pi) up front
        at += 1
        self.do("H2", "RL", site=Site((), (0,), at))
        self.do("P0", "RL", site=Site((), (0,), at + 1))
        self.do("RXDEF", "RL", (0.0,), site=Site((0, at, at + 1, at + 2), (0,)))

    def _mint_gphase(self, value: float):
        """Put GPHASE(value) at the front (S2PI then a split)."""
        self.do("S2PI", "RL", site=Site((), (), 0))
        self.do("SPLUS", "RL", (value, TWO_PI - value), site=Site((0,), ()))

    # -- reduction loop -------------------------------------------------------

    def _reduce(self):
        while True:
            if self._merge_phases():
                continue
            if self._merge_wire_pairs():
                continue
            if self._drop_trivial():
                continue
            if self._contract_once():
                continue
            return

    def _merge_phases(self) -> bool:
        ph = self.phase_gates()
        if len(ph) >= 2:
            self.do("SPLUS", "LR",
                    (self.gate(ph[0]).params[0], self.gate(ph[1]).params[0]),
                    site=Site((ph[0], ph[1]), ()))
            return True
        return False

    def _merge_phases_all(self):
        while self._merge_phases():
            pass

    def _merge_wire_pairs(self) -> bool:
        hit = self.find_word(("P", "P"))
        if hit:
            a, b = hit
            self.do("PPLUS", "LR", (self.gate(a).params[0], self.gate(b).params[0]),
                    site=Site((a, b), (0,)))
            return True
        hit = self.find_word(("RX", "RX"))
        if hit:
            self._rxplus(*hit)
            return True
        return False

    def _rxplus(self, a: int, b: int):
        ta, tb = self.gate(a).params[0], self.gate(b).params[0]
        if self.theory == "QC":
            self.do("RXPLUS", "LR", (ta, tb), site=Site((a, b), (0,)))
            return
        # QCprime: unfold both rotations, cancel the middle H pair, refold
        self.do("RXDEF", "LR", (ta,), site=Site((a,), (0,)))
        hit = self.find_word(("H", "P", "H", "RX"),
                             lambda gs: abs(gs[1].params[0] - ta) < 1e-12
                             and abs(gs[3].params[0] - tb) < 1e-12)
        self.do("RXDEF", "LR", (tb,), site=Site((hit[3],), (0,)))
        hit = self.find_word(("P", "H", "H", "P"),
                             lambda gs: abs(gs[0].params[0] - ta) < 1e-12
                             and abs(gs[3].params[0] - tb) < 1e-12)
        self.do("H2", "LR", site=Site(hit[1:3], (0,)))
        hit = self.find_word(("P", "P"),
                             lambda gs: abs(gs[0].params[0] - ta) < 1e-12
                             and abs(gs[1].params[0] - tb) < 1e-12)
        self.do("PPLUS", "LR", (ta, tb), site=Site(hit, (0,)))
        self._merge_phases_all()
        self._fold_hph(ta + tb)

    def _fold_hph(self, total: float):
        """Fold the unique H P(total) H block (plus phase) back into RX."""
        if not self.phase_gates():
            self.do("S2PI", "RL", site=Site((), (), 0))
        ph = self.phase_gates()[0]
        cur = self.gate(ph).params[0]
        self.do("SPLUS", "RL", (-total / 2.0, cur + total / 2.0),
                site=Site((ph,), ()))
        gidx = next(i for i in self.phase_gates()
                    if abs(self.gate(i).params[0] - (-total / 2.0)) < 1e-12)
        hit = self.find_word(("H", "P", "H"),
                             lambda gs: abs(gs[1].params[0] - total) < 1e-12)
        self.do("RXDEF", "RL", (total,), site=Site((gidx,) + hit, (0,)))

    def _drop_trivial(self) -> bool:
        hit = self.find_word(("P",), lambda gs: _is_zero_mod(gs[0].params[0], TWO_PI))
        if hit:
            self.do("P0", "LR", site=Site(hit, (0,)))
            return True
        hit = self.find_word(("RX",), lambda gs: _is_zero_mod(gs[0].params[0], 2 * TWO_PI))
        if hit:
            i = hit[0]
            if self.theory == "QC":
                self.do("RX0", "LR", site=Site((i,), (0,)))
            else:
                theta = self.gate(i).params[0]
                self.do("RXDEF", "LR", (theta,), site=Site((i,), (0,)))
                ph = self.find_word(("P",),
                                    lambda gs: _is_zero_mod(gs[0].params[0], TWO_PI))
                self.do("P0", "LR", site=Site(ph, (0,)))
                hh = self.find_word(("H", "H"))
                self.do("H2", "LR", site=Site(hh, (0,)))
                self._merge_phases_all()
            return True
        return False

    def _contract_once(self) -> bool:
        hit = self.find_word(("RX", "P", "RX"))
        if not hit:
            return False
        ia, ib, ic = hit
        if self.theory == "QC":
            self.do("E", "LR", (self.gate(ia).params[0], self.gate(ib).params[0],
                                self.gate(ic).params[0]), site=Site(hit, (0,)))
        else:
            self._contract_qcprime(ia, ib, ic)
        return True

    def _contract_qcprime(self, ia: int, ib: int, ic: int):
        """RX(t1) P(phi) RX(t2) -> G P RX P using (E') twice.

        The middle phase is split as phi = x + (phi - x); the free x is
        solved so that the two leftover inner phases sum to 0 mod pi.  The
        split can be folded into the left or the right rotation pair; one
        of the two orientations always admits a solution.
        """
        t1 = self.gate(ia).params[0]
        phi = self.gate(ib).params[0]
        t2 = self.gate(ic).params[0]
        half1 = _is_zero_mod(t1 - math.pi / 2.0, math.pi)
        half2 = _is_zero_mod(t2 - math.pi / 2.0, math.pi)
        if half1 != half2:
            # exactly one rotation is Hadamard-like; the split equation has
            # no solution, but that rotation unfolds into an H via (E_H)
            if half1:
                self._contract_via_h_left(ia, ib, ic)
            else:
                self._contract_via_h_right(ia, ib, ic)
            return
        try:
            xv = _solve_split(t1, phi, t2, mirror=False)
            mirror = False
        except NoMatch:
            xv = _solve_split(t1, phi, t2, mirror=True)
            mirror = True

        if mirror:
            self.do("PPLUS", "RL", (phi - xv, xv), site=Site((ib,), (0,)))
            left_v, right_v = phi - xv, xv
            fold_first, fold_second = xv, phi - xv
            e1, e2 = (xv, t2), (t1, phi - xv)
            dlt = euler_eprime(*e1)[0]
            gam = euler_eprime(*e2)[0]
        else:
            self.do("PPLUS", "RL", (xv, phi - xv), site=Site((ib,), (0,)))
            left_v, right_v = xv, phi - xv
            fold_first, fold_second = xv, phi - xv
            e1, e2 = (t1, xv), (phi - xv, t2)
            gam = euler_eprime(*e1)[0]
            dlt = euler_eprime(*e2)[0]

        run = self.find_word(
            ("RX", "P", "P", "RX"),
            lambda gs: abs(gs[1].params[0] - left_v) < 1e-12
            and abs(gs[2].params[0] - right_v) < 1e-12)
        px = run[1] if not mirror else run[2]
        self.do("H2", "RL", site=Site((), (0,), px))
        self.do("H2", "RL", site=Site((), (0,), px + 3))
        # .. Ha Hb P(fold_first) Hc Hd .. ; fold the inner triple into RX
        self._fold_inner(fold_first)
        if mirror:
            # .. RX(t1) P(phi-x) Ha RX(x) Hd RX(t2): contract the right trio
            trio = self.find_word(("RX", "H", "RX"),
                                  lambda gs: abs(gs[0].params[0] - xv) < 1e-12)
            self.do("EPRIME", "LR", e1, site=Site(trio, (0,)))
            self._merge_phases_all()
            hit = self.find_word(("P", "H"),
                                 lambda gs: abs(gs[0].params[0] - (phi - xv)) < 1e-12)
            self.do("H2", "RL", site=Site((), (0,), hit[0]))
            self._fold_inner(fold_second)
            trio = self.find_word(("RX", "H", "RX"),
                                  lambda gs: abs(gs[2].params[0] - (phi - xv)) < 1e-12)
            self.do("EPRIME", "LR", e2, site=Site(trio, (0,)))
        else:
            # .. RX(t1) Ha RX(x) Hd P(phi-x) RX(t2): contract the left trio
            trio = self.find_word(("RX", "H", "RX"),
                                  lambda gs: abs(gs[2].params[0] - xv) < 1e-12)
            self.do("EPRIME", "LR", e1, site=Site(trio, (0,)))
            self._merge_phases_all()
            hit = self.find_word(("H", "P"),
                                 lambda gs: abs(gs[1].params[0] - (phi - xv)) < 1e-12)
            self.do("H2", "RL", site=Site((), (0,), hit[1] + 1))
            self._fold_inner(fold_second)
            trio = self.find_word(("RX", "H", "RX"),
                                  lambda gs: abs(gs[0].params[0] - (phi - xv)) < 1e-12)
            self.do("EPRIME", "LR", e2, site=Site(trio, (0,)))
        self._merge_phases_all()
        self._contract_tail(gam, dlt)

    def _fold_inner(self, value: float):
        """Fold the unique H . P(value) . H run into RX(value)."""
        self._mint_gphase(-value / 2.0)
        hit = self.find_word(("H", "P", "H"),
                             lambda gs: abs(gs[1].params[0] - value) < 1e-12)
        gidx = next(i for i in self.phase_gates()
                    if abs(self.gate(i).params[0] - (-value / 2.0)) < 1e-12)
        self.do("RXDEF", "RL", (value,), site=Site((gidx,) + hit, (0,)))

    def _rx_to_quarter(self, i: int) -> int:
        """Reduce an RX whose angle is pi/2 mod pi to a literal RX(pi/2).

        Returns the gate index of the resulting RX(pi/2); a global phase
        and a pair of P(pi) gates may be left next to it.
        """
        vr = reduce_angle(self.gate(i).params[0], 2 * TWO_PI)
        if vr > TWO_PI:                      # 5pi/2 or 7pi/2: extract the -1
            self.do("RXNEG", "LR", (vr,), site=Site((i,), (0,)))
            self._merge_phases_all()
            vr -= TWO_PI
        if _is_zero_mod(vr - 3 * math.pi / 2, TWO_PI):
            i = self.find_word(("RX",),
                               lambda gs: _is_zero_mod(gs[0].params[0] - vr,
                                                       2 * TWO_PI, 1e-9))[0]
            self.do("RXFLIP", "LR", (vr,), site=Site((i,), (0,)))
            self._merge_phases_all()
        return self.find_word(
            ("RX",), lambda gs: _is_zero_mod(gs[0].params[0] - math.pi / 2,
                                             2 * TWO_PI, 1e-9))[0]

    def _merge_pp_all(self):
        while True:
            pair = self.find_word(("P", "P"))
            if not pair:
                return
            self.do("PPLUS", "LR",
                    (self.gate(pair[0]).params[0], self.gate(pair[1]).params[0]),
                    site=Site(pair, (0,)))

    def _contract_via_h_left(self, ia: int, ib: int, ic: int):
        """Contract RX(pi/2-like) P(phi) RX(t2) by turning the left RX into H."""
        t2 = self.gate(ic).params[0]
        self._rx_to_quarter(ia)
        self._merge_pp_all()
        q = math.pi / 2
        run = self.find_word(("RX", "P", "RX"),
                             lambda gs: _is_zero_mod(gs[0].params[0] - q, 2 * TWO_PI)
                             and abs(gs[2].params[0] - t2) < 1e-12)
        ia, ib, ic = run
        phi = self.gate(ib).params[0]
        self.do("P0", "RL", site=Site((), (0,), ia))
        z = self.find_word(("P", "RX"),
                           lambda gs: abs(gs[0].params[0]) < 1e-12
                           and _is_zero_mod(gs[1].params[0] - q, 2 * TWO_PI))
        self.do("PPLUS", "RL", (-q, q), site=Site((z[0],), (0,)))
        mid = self.find_word(("P", "RX", "P"),
                             lambda gs: abs(gs[0].params[0] - q) < 1e-12
                             and _is_zero_mod(gs[1].params[0] - q, 2 * TWO_PI)
                             and abs(gs[2].params[0] - phi) < 1e-12)
        self.do("PPLUS", "RL", (q, phi - q), site=Site((mid[2],), (0,)))
        hit = self.find_word(("P", "RX", "P"),
                             lambda gs: abs(gs[0].params[0] - q) < 1e-12
                             and _is_zero_mod(gs[1].params[0] - q, 2 * TWO_PI)
                             and abs(gs[2].params[0] - q) < 1e-12)
        self.do("EH", "RL", site=Site(hit, (0,)))
        hp = self.find_word(("H", "P"),
                            lambda gs: abs(gs[1].params[0] - (phi - q)) < 1e-12)
        self.do("H2", "RL", site=Site((), (0,), hp[1] + 1))
        self._fold_inner(phi - q)
        trio = self.find_word(("RX", "H", "RX"),
                              lambda gs: abs(gs[0].params[0] - (phi - q)) < 1e-12
                              and abs(gs[2].params[0] - t2) < 1e-12)
        self.do("EPRIME", "LR", (phi - q, t2), site=Site(trio, (0,)))
        self._merge_phases_all()
        self._merge_pp_all()

    def _contract_via_h_right(self, ia: int, ib: int, ic: int):
        """Mirror image: turn the right RX into an H."""
        t1 = self.gate(ia).params[0]
        self._rx_to_quarter(ic)
        self._merge_pp_all()
        q = math.pi / 2
        run = self.find_word(("RX", "P", "RX"),
                             lambda gs: abs(gs[0].params[0] - t1) < 1e-12
                             and _is_zero_mod(gs[2].params[0] - q, 2 * TWO_PI))
        ia, ib, ic = run
        phi = self.gate(ib).params[0]
        self.do("P0", "RL", site=Site((), (0,), ic + 1))
        z = self.find_word(("RX", "P"),
                           lambda gs: _is_zero_mod(gs[0].params[0] - q, 2 * TWO_PI)
                           and abs(gs[1].params[0]) < 1e-12)
        self.do("PPLUS", "RL", (q, -q), site=Site((z[1],), (0,)))
        mid = self.find_word(("P", "RX", "P"),
                             lambda gs: abs(gs[0].params[0] - phi) < 1e-12
                             and _is_zero_mod(gs[1].params[0] - q, 2 * TWO_PI)
                             and abs(gs[2].params[0] - q) < 1e-12)
        self.do("PPLUS", "RL", (phi - q, q), site=Site((mid[0],), (0,)))
        hit = self.find_word(("P", "RX", "P"),
                             lambda gs: abs(gs[0].params[0] - q) < 1e-12
                             and _is_zero_mod(gs[1].params[0] - q, 2 * TWO_PI)
                             and abs(gs[2].params[0] - q) < 1e-12)
        self.do("EH", "RL", site=Site(hit, (0,)))
        ph = self.find_word(("P", "H"),
                            lambda gs: abs(gs[0].params[0] - (phi - q)) < 1e-12)
        self.do("H2", "RL", site=Site((), (0,), ph[0]))
        self._fold_inner(phi - q)
        trio = self.find_word(("RX", "H", "RX"),
                              lambda gs: abs(gs[0].params[0] - t1) < 1e-12
                              and abs(gs[2].params[0] - (phi - q)) < 1e-12)
        self.do("EPRIME", "LR", (t1, phi - q), site=Site(trio, (0,)))
        self._merge_phases_all()
        self._merge_pp_all()

    def _contract_tail(self, gam: NormalFormParams, dlt: NormalFormParams):
        """Merge the inner phases (sum 0 mod pi) and the outer rotations.

        The freshly created block reads RX(g2) P(g3) P(d1) RX(d2) P(d3);
        all scans are value-pinned so context gates cannot be confused
        with it.
        """
        def near(a, b, tol=1e-9):
            return abs(a - b) <= tol

        run = self.find_word(
            ("RX", "P", "P", "RX", "P"),
            lambda gs: near(gs[0].params[0], gam.beta2)
            and near(gs[1].params[0], gam.beta3) and near(gs[2].params[0], dlt.beta1)
            and near(gs[3].params[0], dlt.beta2) and near(gs[4].params[0], dlt.beta3))
        v = gam.beta3 + dlt.beta1
        self.do("PPLUS", "LR", (gam.beta3, dlt.beta1), site=Site(run[1:3], (0,)))
        if _is_zero_mod(v, TWO_PI, 1e-8):
            mid = self.find_word(
                ("RX", "P", "RX"),
                lambda gs: near(gs[0].params[0], gam.beta2)
                and near(gs[1].params[0], v, 1e-12)
                and near(gs[2].params[0], dlt.beta2))[1]
            self.do("P0", "LR", site=Site((mid,), (0,)))
        else:
            # v = pi mod 2pi: pull the pi through the right rotation
            mid = self.find_word(
                ("RX", "P", "RX"),
                lambda gs: near(gs[0].params[0], gam.beta2)
                and near(gs[1].params[0], v, 1e-12)
                and near(gs[2].params[0], dlt.beta2))[1]
            self.do("PPLUS", "RL", (math.pi, v - math.pi), site=Site((mid,), (0,)))
            zz = self.find_word(("P", "P"),
                                lambda gs: near(gs[0].params[0], math.pi, 1e-12)
                                and near(gs[1].params[0], v - math.pi, 1e-12))
            self.do("P0", "LR", site=Site((zz[1],), (0,)))
            word = self.find_word(
                ("P", "RX", "P"),
                lambda gs: near(gs[0].params[0], math.pi, 1e-12)
                and near(gs[1].params[0], dlt.beta2)
                and near(gs[2].params[0], dlt.beta3))
            last = word[2]
            vl = self.gate(last).params[0]
            self.do("PPLUS", "RL", (math.pi, vl - math.pi), site=Site((last,), (0,)))
            word = self.find_word(
                ("P", "RX", "P"),
                lambda gs: near(gs[0].params[0], math.pi, 1e-12)
                and near(gs[1].params[0], dlt.beta2)
                and near(gs[2].params[0], math.pi, 1e-12))
            self.do("RXMINUS", "LR", (self.gate(word[1]).params[0],),
                    site=Site(word, (0,)))
        expect2 = dlt.beta2 if _is_zero_mod(v, TWO_PI, 1e-8) else -dlt.beta2
        pair = self.find_word(("RX", "RX"),
                              lambda gs: near(gs[0].params[0], gam.beta2)
                              and near(gs[1].params[0], expect2))
        if pair:
            self._rxplus(*pair)

    # -- final shaping ---------------------------------------------------------

    def _shape_and_read(self) -> NormalFormParams:
        w = self.wire_gates()
        kinds = [self.gate(i).kind for i in w]
        if "RX" not in kinds:
            at = w[0] if w else len(self.c.gates)
            if self.theory == "QC":
                self.do("RX0", "RL", site=Site((), (0,), at))
            else:
                self._mint_rx0(at)
                self._merge_phases_all()
        # band-reduce the rotation into [0, pi]
        rx_i = self.find_word(("RX",))[0]
        theta = reduce_angle(self.gate(rx_i).params[0], 2 * TWO_PI)
        if theta > TWO_PI + ANGLE_EPS:
            self.do("RXNEG", "LR", (self.gate(rx_i).params[0],),
                    site=Site((rx_i,), (0,)))
            self._merge_phases_all()
            rx_i = self.find_word(("RX",))[0]
            theta = reduce_angle(self.gate(rx_i).params[0], 2 * TWO_PI)
        if theta > math.pi + ANGLE_EPS:
            self.do("RXFLIP", "LR", (self.gate(rx_i).params[0],),
                    site=Site((rx_i,), (0,)))
            self._merge_phases_all()
            while self.find_word(("P", "P")):
                pair = self.find_word(("P", "P"))
                self.do("PPLUS", "LR",
                        (self.gate(pair[0]).params[0], self.gate(pair[1]).params[0]),
                        site=Site(pair, (0,)))
        rx_i = self.find_word(("RX",))[0]
        if not any(self.gate(i).kind == "P" and i < rx_i for i in self.wire_gates()):
            self.do("P0", "RL", site=Site((), (0,), rx_i))
        rx_i = self.find_word(("RX",))[0]
        if not any(self.gate(i).kind == "P" and i > rx_i for i in self.wire_gates()):
            self.do("P0", "RL", site=Site((), (0,), self.wire_gates()[-1] + 1))
        if not self.phase_gates():
            self.do("S2PI", "RL", site=Site((), (), 0))
        if self.phase_gates() != [len(self.c.gates) - 1]:
            # relocate the global phase to the tail so normal forms from
            # different derivations share the same literal gate order
            k = self.phase_gates()[0]
            v = self.gate(k).params[0]
            self.do("S2PI", "RL", site=Site((), (), len(self.c.gates)))
            self.do("SPLUS", "LR", (v, TWO_PI),
                    site=Site((k, len(self.c.gates) - 1), ()))
        w = self.wire_gates()
        kinds = [self.gate(i).kind for i in w]
        if kinds != ["P", "RX", "P"] or self.phase_gates() != [3]:
            raise SemanticDrift(f"normalization left shape {kinds} (engine bug)")
        b0 = self.gate(self.phase_gates()[0]).params[0]
        b1 = self.gate(w[0]).params[0]
        b2 = reduce_angle(self.gate(w[1]).params[0], 2 * TWO_PI)
        b3 = self.gate(w[2]).params[0]
        return _pack(b0, b1, b2, b3)


def _wrap_half(u: float) -> float:
    """Reduce into [-pi/2, pi/2): distance of u from the nearest pi multiple."""
    r = math.fmod(u + math.pi / 2.0, math.pi)
    if r < 0:
        r += math.pi
    return r - math.pi / 2.0


def _solve_split(t1: float, phi: float, t2: float, mirror: bool = False) -> float:
    """Find x making the two inner (E') phases sum to 0 mod pi.

    Direct orientation: beta3'(t1, x) + beta1'(phi - x, t2); mirrored:
    beta3'(t1, phi - x) + beta1'(x, t2).  One of the two always has a root
    (the sweeps are intervals around pi/2 whose widths are the distances of
    t1, t2 from the pi grid); we scan for sign changes of the wrapped sum
    and polish by bisection, with a local minimization fallback for
    tangential roots.
    """
    def f(xv: float) -> float:
        if mirror:
            a, _ = euler_eprime(t1, phi - xv)
            b, _ = euler_eprime(xv, t2)
        else:
            a, _ = euler_eprime(t1, xv)
            b, _ = euler_eprime(phi - xv, t2)
        return _wrap_half(a.beta3 + b.beta1)

    n = 4096
    xs = [i * 2 * TWO_PI / n for i in range(n + 1)]
    vals = [f(xv) for xv in xs]
    best = min(range(n + 1), key=lambda i: abs(vals[i]))
    candidates = []
    for i in range(n):
        a, b = vals[i], vals[i + 1]
        if abs(a) < 1e-12:
            candidates.append(xs[i])
        elif a * b < 0 and abs(a - b) < 0.5:   # genuine crossing, not a jump
            lo, hi, flo = xs[i], xs[i + 1], a
            for _ in range(120):
                mid = 0.5 * (lo + hi)
                vm = f(mid)
                if vm == 0.0:
                    lo = hi = mid
                    break
                if vm * flo < 0:
                    hi = mid
                else:
                    lo, flo = mid, vm
            candidates.append(0.5 * (lo + hi))
    if not candidates:
        # tangential root: golden-section on |f| around the best grid point
        lo = xs[max(best - 2, 0)]
        hi = xs[min(best + 2, n)]
        inv = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        c, d = b - inv * (b - a), a + inv * (b - a)
        for _ in range(200):
            if abs(f(c)) < abs(f(d)):
                b, d = d, c
                c = b - inv * (b - a)
            else:
                a, c = c, d
                d = a + inv * (b - a)
        candidates.append(0.5 * (a + b))
    for xv in candidates:
        if abs(f(xv)) < 1e-10:
            return xv
    raise NoMatch("no split angle closes the (E') contraction")
