"""Replacing marked gates of one family by circuits of another.

In ``A[B/M]`` every marked gate G of ``A_{n,k}`` becomes a copy of
``B_{fanin(G),k}`` whose gates are numbered ``<G, G'>``; unmarked internal
gates are renamed ``<0, G>``.  Inputs and outputs of A keep their flat numbers
so the result stays admissibly numbered.  Inputs and the output of each copy
of B turn into unary Or gates: the i-th input forwards the i-th predecessor of
G, the output forwards B's output predecessor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..circuit import Circuit, Gate, GateType, evaluate, gate_tables, sort_key
from ..codec import id_to_number, number_to_tuple
from ..conlang import (
    DEFAULT_CAP, OR_CODE, BoundExceeded, FamilyOracle, decide_slice, materialize, parse_word,
)

# number of the pair <0, 0>; flat numbers below it never collide with pairs
PAIR_FLOOR = id_to_number((0, 0))


class PlanViolation(ValueError):
    pass


@dataclass(frozen=True)
class SubstitutionPlan:
    marker: Callable[[int, int, int], bool]
    fanin: Callable[[int, int, int], int]
    name: str = "plan"


def plan_by_type(A: FamilyOracle, types, name=None) -> SubstitutionPlan:
    """Mark every internal gate whose type is in ``types``."""
    types = frozenset(types)

    def marker(G, n, k):
        if G < n + A.output_count(n, k):
            return False
        return A.type_of(G, n, k) in types

    return SubstitutionPlan(marker, lambda G, n, k: A.fanin(G, n, k),
                            name or "type:" + ",".join(sorted(t.value for t in types)))


def plan_by_gates(A: FamilyOracle, marked: dict, name=None) -> SubstitutionPlan:
    """Mark explicit gate numbers per slice: ``marked[(n, k)]`` is a set."""
    def marker(G, n, k):
        return G in marked.get((n, k), ())

    return SubstitutionPlan(marker, lambda G, n, k: A.fanin(G, n, k), name or "gates")


def empty_plan(A: FamilyOracle) -> SubstitutionPlan:
    return SubstitutionPlan(lambda G, n, k: False, lambda G, n, k: A.fanin(G, n, k), "none")


class SubstitutedFamily(FamilyOracle):
    """``A[B/M]`` built slice by slice from the materialized pieces."""

    def __init__(self, A: FamilyOracle, B: FamilyOracle, plan: SubstitutionPlan,
                 cap: int = DEFAULT_CAP):
        self.A, self.B, self.plan, self.cap = A, B, plan, cap
        self.name = f"{A.name}[{B.name}/{plan.name}]"
        self._slices = {}

    def _slice(self, n, k):
        key = (n, k)
        if key not in self._slices:
            self._slices[key] = build_slice(self.A, self.B, self.plan, n, k, self.cap)
        return self._slices[key]

    def type_of(self, G, n, k):
        g = self._slice(n, k)[0].get(G)
        return None if g is None else g.type

    def pth_input(self, G, p, n, k):
        g = self._slice(n, k)[0].get(G)
        if g is None or p >= len(g.preds):
            return None
        return g.preds[p]

    def numbering_bound(self, n, k):
        return max(self._slice(n, k)[0]) + 1

    def depth_bound(self, k):
        return self.A.depth_bound(k) * (self.B.depth_bound(k) + 2)

    def output_count(self, n, k):
        return self.A.output_count(n, k)

    def label(self, G, n, k):
        return self._slice(n, k)[1].get(G)

    def gate_numbers(self, n, k, cap=DEFAULT_CAP):
        gates = self._slice(n, k)[0]
        if len(gates) > cap:
            raise BoundExceeded(f"{len(gates)} gates exceed cap {cap}")
        return sorted(gates)


def _check_plan(A_c: Circuit, plan: SubstitutionPlan, n, k, m):
    marked = {}
    for G, g in A_c.gates.items():
        if not plan.marker(G, n, k):
            continue
        if G < n + m:
            raise PlanViolation(f"gate {G} is an input or output and cannot be marked")
        f = plan.fanin(G, n, k)
        if f != len(g.preds):
            raise PlanViolation(f"fan-in of gate {G} is {len(g.preds)}, plan says {f}")
        marked[G] = f
    return marked


def build_slice(A, B, plan, n, k, cap=DEFAULT_CAP):
    """Gates ``{number: Gate}`` (with numeric predecessors) and labels."""
    Ac = materialize(A, n, k, cap)
    m = len(Ac.outputs)
    if n + m > PAIR_FLOOR:
        raise BoundExceeded(f"flat numbers 0..{n + m - 1} would collide with pair numbers")
    marked = _check_plan(Ac, plan, n, k, m)

    def outer(H):
        # number of the gate of the result that stands for A's gate H
        if H in marked:
            return id_to_number((H, marked[H]))
        return H if H < n + m else id_to_number((0, H))

    gates = {}
    labels = {}
    b_slices = {}
    for G, g in Ac.gates.items():
        if G not in marked:
            num = outer(G)
            gates[num] = Gate(g.type, tuple(outer(H) for H in g.preds))
            if num != G:
                labels[num] = (0, G)
            continue
        f = marked[G]
        if f not in b_slices:
            b_slices[f] = materialize(B, f, k, cap)
        Bc = b_slices[f]
        if len(Bc.outputs) != 1:
            raise PlanViolation("replacement circuits must have one output")
        if len(Bc.gates[f].preds) != 1:
            raise PlanViolation("the output gate of a replacement circuit must have fan-in 1")
        for Gp, bg in Bc.gates.items():
            num = id_to_number((G, Gp))
            labels[num] = (G, Gp)
            if Gp < f:
                gates[num] = Gate(GateType.OR, (outer(g.preds[Gp]),))
            else:
                t = GateType.OR if Gp == f else bg.type
                gates[num] = Gate(t, tuple(id_to_number((G, H)) for H in bg.preds))
        if len(gates) > cap:
            raise BoundExceeded(f"more than {cap} gates")
    return gates, labels


def substitute(A: FamilyOracle, B: FamilyOracle, plan: SubstitutionPlan,
               cap: int = DEFAULT_CAP) -> SubstitutedFamily:
    return SubstitutedFamily(A, B, plan, cap)


# The word-level decision procedure ---------------------------------------

class SubstitutionDecider:
    """Decides the binary direct language of ``A[B/M]`` from A, B, M and fanin.

    It never builds a circuit; it reduces each word to a few membership
    questions about A and B.
    """

    def __init__(self, A: FamilyOracle, B: FamilyOracle, plan: SubstitutionPlan):
        self.A, self.B, self.plan = A, B, plan

    def _resolve(self, X, n, k):
        m = self.A.output_count(n, k)
        if X < n + m:
            return 0, X
        t = number_to_tuple(X)
        if t is None or len(t) != 2:
            return None
        G, Gp = t
        if G == 0 and Gp < n + m:
            return None  # inputs and outputs only exist under their flat numbers
        return G, Gp

    def _plausible(self, G, Gp, n, k):
        M = self.plan.marker
        if G == 0:
            return not M(Gp, n, k)
        return bool(M(G, n, k))

    def decide(self, G, Gp, a, p, n, k) -> bool:
        A, B, plan = self.A, self.B, self.plan
        if not self._plausible(G, Gp, n, k):
            return False
        if p == "":
            if G == 0:
                return decide_slice(A, Gp, a, "", n, k)
            f = plan.fanin(G, n, k)
            if Gp <= f:
                return a == OR_CODE
            return decide_slice(B, Gp, a, "", f, k)
        if not (p == "0" or p[0] == "1"):
            return False
        pos = int(p, 2)
        target = self._resolve(a, n, k)
        if target is None:
            return False
        H, Hp = target
        if not self._plausible(H, Hp, n, k):
            return False
        if G == 0 and H == 0:
            return decide_slice(A, Gp, Hp, p, n, k)
        if G != 0 and G == H:
            return decide_slice(B, Gp, Hp, p, plan.fanin(G, n, k), k)
        if G == 0:
            return decide_slice(A, Gp, H, p, n, k) and Hp == plan.fanin(H, n, k)
        # G marked: <G, G'> is the G'-th input of the copy of B, a unary Or
        # whose only predecessor is what feeds position G' of G in A
        f = plan.fanin(G, n, k)
        if pos != 0 or Gp >= f:
            return False
        if H == 0:
            return decide_slice(A, G, Hp, format(Gp, "b"), n, k)
        return decide_slice(A, G, H, format(Gp, "b"), n, k) and Hp == plan.fanin(H, n, k)

    def decide_bd(self, w: str) -> bool:
        parts = parse_word(w)
        if parts is None:
            return False
        X, a, p, nb, kb = parts
        if not nb or not kb or any(c not in "01" for c in nb + kb):
            return False
        if (len(nb) > 1 and nb[0] == "0") or (len(kb) > 1 and kb[0] == "0"):
            return False
        n, k = int(nb, 2), int(kb, 2)
        loc = self._resolve(X, n, k)
        if loc is None:
            return False
        return self.decide(loc[0], loc[1], a, p, n, k)


# Reference semantics ------------------------------------------------------

def interpret(A: FamilyOracle, B: FamilyOracle, plan: SubstitutionPlan, n: int, k: int, x: str,
              cap: int = DEFAULT_CAP) -> str:
    """Evaluate A on x, computing each marked gate by running B on its inputs."""
    Ac = materialize(A, n, k, cap)
    bs = {}
    val = {}
    for i, gid in enumerate(Ac.inputs):
        val[gid] = x[i] == "1"
    for G in Ac.order:
        g = Ac.gates[G]
        if g.type is GateType.INPUT:
            continue
        args = [val[H] for H in g.preds]
        if G >= n + len(Ac.outputs) and plan.marker(G, n, k):
            f = len(args)
            if f not in bs:
                bs[f] = materialize(B, f, k, cap)
            val[G] = evaluate(bs[f], "".join("1" if v else "0" for v in args)) == "1"
        elif g.type is GateType.AND:
            val[G] = all(args)
        elif g.type is GateType.OR:
            val[G] = any(args)
        elif g.type is GateType.NOT:
            val[G] = not args[0]
        else:
            val[G] = g.type is GateType.CONST1
    return "".join("1" if val[o] else "0" for o in Ac.outputs)


def interpret_table(A, B, plan, n, k, cap=DEFAULT_CAP) -> tuple[int, ...]:
    """Bit-parallel tables of :func:`interpret` over all inputs of length n."""
    m = A.output_count(n, k)
    tables = [0] * m
    for a in range(1 << n):
        x = "".join("1" if (a >> i) & 1 else "0" for i in range(n))
        y = interpret(A, B, plan, n, k, x, cap)
        for j, bit in enumerate(y):
            if bit == "1":
                tables[j] |= 1 << a
    return tuple(tables)


# Renumbering ----------------------------------------------------------------

def canonical_renumber(c: Circuit) -> Circuit:
    """Flat admissible numbering: inputs, then outputs, then the remaining
    gates ordered by the bit strings of their (structured) ids."""
    order = list(c.inputs)
    seen = set(order)
    for o in c.outputs:
        if o not in seen:
            order.append(o)
            seen.add(o)
    rest = sorted((g for g in c.gates if g not in seen), key=sort_key)
    order += rest
    new = {old: i for i, old in enumerate(order)}
    gates = {new[old]: Gate(g.type, tuple(new[p] for p in g.preds)) for old, g in c.gates.items()}
    labels = {}
    for old, i in new.items():
        form = old if isinstance(old, tuple) else c.labels.get(old)
        if form is not None:
            labels[i] = form
    return Circuit(c.n_inputs, tuple(new[o] for o in c.outputs), gates, labels=labels)


def relabel_pairs(c: Circuit) -> Circuit:
    """Wrap every gate id G as the pair <0, G>."""
    gates = {(0, gid): Gate(g.type, tuple((0, p) for p in g.preds)) for gid, g in c.gates.items()}
    return Circuit(c.n_inputs, tuple((0, o) for o in c.outputs), gates,
                   inputs=tuple((0, i) for i in c.inputs))


def table_equal(c1: Circuit, c2: Circuit) -> bool:
    t1 = gate_tables(c1)
    t2 = gate_tables(c2)
    return [t1[o] for o in c1.outputs] == [t2[o] for o in c2.outputs]


# Built-in triples --------------------------------------------------------------

def _first_and_plan(A: FamilyOracle) -> SubstitutionPlan:
    def marker(G, n, k):
        J = 2 * max(0, min(k, n) - 1)
        return J > 0 and G == n + 1 + J

    return SubstitutionPlan(marker, lambda G, n, k: A.fanin(G, n, k), "first-and")


def builtin_cases() -> dict:
    """Named ``(A, B, plan)`` triples over the built-in families."""
    from ..families import oracle

    fig1 = oracle("fig1-equality")
    conj = oracle("and-gate")
    return {
        "fig1-and": (fig1, oracle("and-gate"), plan_by_type(fig1, {GateType.AND})),
        "fig1-or": (fig1, oracle("or-gate"), plan_by_type(fig1, {GateType.OR})),
        "fig1-first-and-negated": (fig1, oracle("not-first-input"), _first_and_plan(fig1)),
        "and-as-or": (conj, oracle("or-gate"), plan_by_type(conj, {GateType.AND})),
    }
