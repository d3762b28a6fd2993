"""Explicit Boolean circuits: evaluation, statistics, numbering checks, export."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Iterable, Mapping

from .codec import id_to_bits, id_to_number

GateId = Hashable  # int, or a tuple of naturals for structured ids


class GateType(enum.Enum):
    INPUT = "input"
    AND = "and"
    OR = "or"
    NOT = "not"
    CONST0 = "const0"
    CONST1 = "const1"


class CircuitError(ValueError):
    pass


class InputLengthMismatch(CircuitError):
    pass


@dataclass(frozen=True)
class Gate:
    type: GateType
    preds: tuple = ()


@dataclass(frozen=True)
class NumberingBound:
    n: int
    k: int
    bound: int


@dataclass(frozen=True)
class Stats:
    size: int
    depth: int
    levels: dict


def gate_number(gid: GateId) -> int:
    return id_to_number(gid)


@dataclass(frozen=True)
class Circuit:
    """A DAG of typed gates with ordered predecessor lists.

    ``inputs`` defaults to ``0 .. n_inputs-1``; circuits with structured ids
    (e.g. ``(0, i)``) list their input gates explicitly.  ``labels`` maps gate
    ids of materialized circuits to their structured form, for display only.
    """

    n_inputs: int
    outputs: tuple
    gates: Mapping
    inputs: tuple = None
    labels: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.inputs is None:
            object.__setattr__(self, "inputs", tuple(range(self.n_inputs)))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        self.check()

    def check(self) -> None:
        if len(self.inputs) != self.n_inputs:
            raise CircuitError("input list does not match n_inputs")
        for i in self.inputs:
            g = self.gates.get(i)
            if g is None or g.type is not GateType.INPUT:
                raise CircuitError(f"input gate {i!r} missing or not of type input")
        n_typed_inputs = sum(1 for g in self.gates.values() if g.type is GateType.INPUT)
        if n_typed_inputs != self.n_inputs:
            raise CircuitError("input-typed gates outside the input list")
        for gid, g in self.gates.items():
            if g.type in (GateType.INPUT, GateType.CONST0, GateType.CONST1) and g.preds:
                raise CircuitError(f"gate {gid!r} of type {g.type.value} has predecessors")
            if g.type is GateType.NOT and len(g.preds) != 1:
                raise CircuitError(f"not gate {gid!r} needs exactly one predecessor")
            for p in g.preds:
                if p not in self.gates:
                    raise CircuitError(f"gate {gid!r} refers to missing gate {p!r}")
        for o in self.outputs:
            if o not in self.gates:
                raise CircuitError(f"output {o!r} is not a gate")
        _ = self.order

    @cached_property
    def order(self) -> tuple:
        ts = TopologicalSorter({gid: g.preds for gid, g in self.gates.items()})
        try:
            return tuple(ts.static_order())
        except CycleError as exc:
            raise CircuitError(f"cycle through {exc.args[1]!r}") from None

    @property
    def size(self) -> int:
        return len(self.gates)

    def fanin(self, gid) -> int:
        return len(self.gates[gid].preds)


def evaluate_all(c: Circuit, x: str) -> dict:
    if len(x) != c.n_inputs:
        raise InputLengthMismatch(f"expected {c.n_inputs} input bits, got {len(x)}")
    val = {}
    inputs = {gid: x[i] == "1" for i, gid in enumerate(c.inputs)}
    for gid in c.order:
        g = c.gates[gid]
        t = g.type
        if t is GateType.INPUT:
            v = inputs[gid]
        elif t is GateType.AND:
            v = all(val[p] for p in g.preds)
        elif t is GateType.OR:
            v = any(val[p] for p in g.preds)
        elif t is GateType.NOT:
            v = not val[g.preds[0]]
        else:
            v = t is GateType.CONST1
        val[gid] = v
    return val


def evaluate(c: Circuit, x: str) -> str:
    val = evaluate_all(c, x)
    return "".join("1" if val[o] else "0" for o in c.outputs)


# Bit-parallel evaluation: bit ``a`` of a table is the gate value on the input
# whose i-th bit is ``(a >> i) & 1``.

def input_masks(n: int) -> list[int]:
    size = 1 << n
    masks = []
    for i in range(n):
        block = ((1 << (1 << i)) - 1) << (1 << i)  # 2^i zeros then 2^i ones
        period = 1 << (i + 1)
        m = 0
        for start in range(0, size, period):
            m |= block << start
        masks.append(m)
    return masks


def assignment(a: int, n: int) -> str:
    return "".join("1" if (a >> i) & 1 else "0" for i in range(n))


def gate_tables(c: Circuit) -> dict:
    full = (1 << (1 << c.n_inputs)) - 1
    masks = input_masks(c.n_inputs)
    inputs = {gid: masks[i] for i, gid in enumerate(c.inputs)}
    val = {}
    for gid in c.order:
        g = c.gates[gid]
        t = g.type
        if t is GateType.INPUT:
            v = inputs[gid]
        elif t is GateType.AND:
            v = full
            for p in g.preds:
                v &= val[p]
        elif t is GateType.OR:
            v = 0
            for p in g.preds:
                v |= val[p]
        elif t is GateType.NOT:
            v = full ^ val[g.preds[0]]
        elif t is GateType.CONST1:
            v = full
        else:
            v = 0
        val[gid] = v
    return val


def truth_table(c: Circuit) -> tuple[int, ...]:
    """One bit-parallel table per output gate."""
    val = gate_tables(c)
    return tuple(val[o] for o in c.outputs)


def predicate_table(n: int, pred) -> int:
    t = 0
    for a in range(1 << n):
        if pred(assignment(a, n)):
            t |= 1 << a
    return t


def stats(c: Circuit) -> Stats:
    levels = {}
    for gid in c.order:
        preds = c.gates[gid].preds
        levels[gid] = 1 + max(levels[p] for p in preds) if preds else 0
    depth = max((levels[o] for o in c.outputs), default=0)
    return Stats(size=c.size, depth=depth, levels=levels)


def longest_path(c: Circuit) -> int:
    """Length of the longest directed path anywhere in the circuit."""
    lv = stats(c).levels
    return max(lv.values(), default=0)


def validate_numbering(c: Circuit, b: NumberingBound) -> list[str]:
    """Admissibility violations; an empty list means the numbering is fine."""
    problems = []
    numbers = {}
    for gid in c.gates:
        num = gate_number(gid)
        if num in numbers:
            problems.append(f"gates {numbers[num]!r} and {gid!r} share number {num}")
        numbers[num] = gid
    n = c.n_inputs
    if [gate_number(i) for i in c.inputs] != list(range(n)):
        problems.append("inputs must be numbered 0 .. n-1")
    if [gate_number(o) for o in c.outputs] != list(range(n, n + len(c.outputs))):
        problems.append("outputs must start at n and be consecutive")
    if b.bound < n + len(c.outputs):
        problems.append("bound is below n + number of outputs")
    too_big = [g for g in c.gates if gate_number(g) >= b.bound]
    if too_big:
        problems.append(f"{len(too_big)} gate numbers exceed bound {b.bound}")
    return problems


# Interchange -----------------------------------------------------------------

def to_json(c: Circuit) -> str:
    gates = []
    for gid in sorted(c.gates, key=gate_number):
        g = c.gates[gid]
        entry = {"id": gate_number(gid)}
        form = gid if isinstance(gid, tuple) else c.labels.get(gid)
        if form is not None:
            entry["structured_id"] = list(form)
        entry["type"] = g.type.value
        entry["preds"] = [gate_number(p) for p in g.preds]
        gates.append(entry)
    doc = {
        "n_inputs": c.n_inputs,
        "outputs": [gate_number(o) for o in c.outputs],
        "gates": gates,
    }
    return json.dumps(doc, indent=1)


def from_json(text: str) -> Circuit:
    doc = json.loads(text)
    gates = {}
    labels = {}
    for entry in doc["gates"]:
        gid = entry["id"]
        gates[gid] = Gate(GateType(entry["type"]), tuple(entry["preds"]))
        if "structured_id" in entry:
            labels[gid] = tuple(entry["structured_id"])
    n = doc["n_inputs"]
    return Circuit(n, tuple(doc["outputs"]), gates, labels=labels)


def _label(c: Circuit, gid) -> str:
    form = gid if isinstance(gid, tuple) else c.labels.get(gid)
    if form is not None:
        return "<" + ",".join(str(v) for v in form) + ">"
    return str(gid)


def to_dot(c: Circuit, name: str = "C") -> str:
    node = {gid: f"g{gate_number(gid)}" for gid in c.gates}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for gid in sorted(c.gates, key=gate_number):
        g = c.gates[gid]
        text = f"x{c.inputs.index(gid)}" if g.type is GateType.INPUT else g.type.value
        shape = "box" if g.type is GateType.INPUT else "ellipse"
        lines.append(f'  {node[gid]} [label="{text}\\n{_label(c, gid)}", shape={shape}];')
    for gid in sorted(c.gates, key=gate_number):
        for pos, p in enumerate(c.gates[gid].preds):
            lines.append(f'  {node[p]} -> {node[gid]} [label="{pos}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# Construction helpers ----------------------------------------------------------

def make_circuit(n_inputs: int, outputs: Iterable, spec: Mapping) -> Circuit:
    """Build a flat circuit from ``{id: (type, preds)}``; inputs are added."""
    gates = {i: Gate(GateType.INPUT) for i in range(n_inputs)}
    for gid, (t, preds) in spec.items():
        gates[gid] = Gate(t, tuple(preds))
    return Circuit(n_inputs, tuple(outputs), gates)


def sort_key(gid) -> tuple[int, str]:
    """Shortlex order of encoded ids, which is the order of gate numbers."""
    b = id_to_bits(gid)
    return len(b), b
