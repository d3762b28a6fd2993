"""Connection languages of parameterized circuit families.

A family is seen through a :class:`FamilyOracle` that answers "what type is
gate G" and "which gate is the p-th predecessor of G" for each slice (n, k).
Words are 5-item lists ``<G, a, p, z, z'>`` with ``n = |z|`` and ``k = |z'|``
(or ``n`` and ``k`` as numerals in the binary variant).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .circuit import Circuit, Gate, GateType, CircuitError, NumberingBound, gate_number, validate_numbering, stats
from .codec import bits_to_nat, delta, encode_list, encode_numerals, is_numeral, nat_to_bits, try_decode

DEFAULT_CAP = 1 << 14

# Type codes used in connection words.  Constant gates answer like the gates
# they are equivalent to: const1 is an empty And, const0 an empty Or.
AND_CODE, OR_CODE, NOT_CODE = 0, 1, 2
TYPE_CODE = {
    GateType.AND: AND_CODE,
    GateType.OR: OR_CODE,
    GateType.NOT: NOT_CODE,
    GateType.CONST1: AND_CODE,
    GateType.CONST0: OR_CODE,
}
CODE_NAMES = {AND_CODE: "and", OR_CODE: "or", NOT_CODE: "not"}


class BoundExceeded(RuntimeError):
    pass


class InconsistentOracle(ValueError):
    pass


class FamilyOracle:
    """Base class for families given by their gate-level answers.

    Subclasses implement :meth:`type_of`, :meth:`pth_input`,
    :meth:`numbering_bound` and :meth:`depth_bound`.  Families whose gate
    numbers are sparse (pair ids, say) also override :meth:`gate_numbers`.
    """

    name = "family"

    def type_of(self, G: int, n: int, k: int) -> GateType | None:
        raise NotImplementedError

    def pth_input(self, G: int, p: int, n: int, k: int) -> int | None:
        raise NotImplementedError

    def numbering_bound(self, n: int, k: int) -> int:
        raise NotImplementedError

    def depth_bound(self, k: int) -> int:
        raise NotImplementedError

    def output_count(self, n: int, k: int) -> int:
        return 1

    def label(self, G: int, n: int, k: int):
        """Structured form of gate number G, if the family uses one."""
        return None

    def gate_numbers(self, n: int, k: int, cap: int = DEFAULT_CAP) -> list[int]:
        bound = self.numbering_bound(n, k)
        if bound > cap:
            raise BoundExceeded(f"numbering bound {bound} exceeds cap {cap} at (n={n}, k={k})")
        return [G for G in range(bound) if self.type_of(G, n, k) is not None]

    def fanin(self, G: int, n: int, k: int, cap: int = DEFAULT_CAP) -> int:
        p = 0
        while self.pth_input(G, p, n, k) is not None:
            p += 1
            if p > cap:
                raise BoundExceeded(f"fan-in of gate {G} exceeds cap {cap}")
        return p


class CircuitOracle(FamilyOracle):
    """A single explicit circuit viewed as the (n, k) slice of a family."""

    def __init__(self, c: Circuit, n: int | None = None, k: int = 0, name: str = "circuit"):
        self.circuit = c
        self.n = c.n_inputs if n is None else n
        self.k = k
        self.name = name
        self._by_number = {gate_number(g): g for g in c.gates}
        # number -> (type, predecessor numbers)
        self._table = {num: (c.gates[g].type, tuple(gate_number(p) for p in c.gates[g].preds))
                       for num, g in self._by_number.items()}
        self._depth = stats(c).depth

    def type_of(self, G, n, k):
        if n != self.n or k != self.k:
            return None
        entry = self._table.get(G)
        return None if entry is None else entry[0]

    def pth_input(self, G, p, n, k):
        if n != self.n or k != self.k:
            return None
        entry = self._table.get(G)
        if entry is None or p >= len(entry[1]):
            return None
        return entry[1][p]

    def numbering_bound(self, n, k):
        return max(self._by_number, default=-1) + 1

    def depth_bound(self, k):
        return self._depth

    def output_count(self, n, k):
        return len(self.circuit.outputs)

    def label(self, G, n, k):
        gid = self._by_number.get(G)
        if isinstance(gid, tuple):
            return gid
        return self.circuit.labels.get(gid)

    def gate_numbers(self, n, k, cap=DEFAULT_CAP):
        if (n, k) != (self.n, self.k):
            return []
        if len(self._by_number) > cap:
            raise BoundExceeded(f"{len(self._by_number)} gates exceed cap {cap}")
        return sorted(self._by_number)


def materialize(o: FamilyOracle, n: int, k: int, cap: int = DEFAULT_CAP) -> Circuit:
    """Build C_{n,k} gate by gate from the oracle's answers."""
    numbers = o.gate_numbers(n, k, cap)
    if len(numbers) > cap:
        raise BoundExceeded(f"{len(numbers)} gates exceed cap {cap}")
    gates = {}
    labels = {}
    for G in numbers:
        t = o.type_of(G, n, k)
        preds = []
        p = 0
        while True:
            a = o.pth_input(G, p, n, k)
            if a is None:
                break
            preds.append(a)
            p += 1
            if p > cap:
                raise BoundExceeded(f"fan-in of gate {G} exceeds cap {cap}")
        gates[G] = Gate(t, tuple(preds))
        lab = o.label(G, n, k)
        if lab is not None:
            labels[G] = lab
    m = o.output_count(n, k)
    try:
        c = Circuit(n, tuple(range(n, n + m)), gates, labels=labels)
    except CircuitError as exc:
        raise InconsistentOracle(str(exc)) from None
    problems = validate_numbering(c, NumberingBound(n, k, max(o.numbering_bound(n, k), n + m)))
    if problems:
        raise InconsistentOracle("; ".join(problems))
    return c


# Words -----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ConnectionWord:
    """A word <G, a, p, z, z'>; ``p`` is kept as its bitstring form.

    ``p == ""`` makes this a type word with ``a`` the type code; otherwise
    ``p`` is a numeral (direct words) or an encoded path (extended words).
    """

    G: int
    a: int
    p: str
    n: int
    k: int

    def to_bits(self, z: str | None = None, z2: str | None = None) -> str:
        z = "1" * self.n if z is None else z
        z2 = "1" * self.k if z2 is None else z2
        assert len(z) == self.n and len(z2) == self.k
        return encode_list([nat_to_bits(self.G), nat_to_bits(self.a), self.p, z, z2])

    def to_binary_bits(self) -> str:
        return encode_list([nat_to_bits(self.G), nat_to_bits(self.a), self.p,
                            nat_to_bits(self.n), nat_to_bits(self.k)])

    @property
    def is_type_word(self) -> bool:
        return self.p == ""

    def __str__(self):
        p = "eps" if self.p == "" else self.p
        return f"<{self.G},{self.a},{p},n={self.n},k={self.k}>"


def type_word(G: int, code: int, n: int, k: int) -> ConnectionWord:
    return ConnectionWord(G, code, "", n, k)


def edge_word(G: int, a: int, p: int, n: int, k: int) -> ConnectionWord:
    return ConnectionWord(G, a, nat_to_bits(p), n, k)


def path_word(G: int, a: int, steps: Iterable[int], n: int, k: int) -> ConnectionWord:
    return ConnectionWord(G, a, encode_numerals(list(steps)), n, k)


def _numeral(b: str, strict: bool) -> int | None:
    if strict:
        return int(b, 2) if is_numeral(b) else None
    if not b:
        return None
    return bits_to_nat(b, strict=False)


def decide_slice(o: FamilyOracle, G: int, a: int, p: str, n: int, k: int, strict: bool = True) -> bool:
    """Direct-language membership for already decoded components."""
    t = o.type_of(G, n, k)
    if t is None:
        return False
    if p == "":
        return t is not GateType.INPUT and TYPE_CODE[t] == a
    pos = _numeral(p, strict)
    if pos is None:
        return False
    return o.pth_input(G, pos, n, k) == a


def parse_word(w: str, strict: bool = True):
    """Split a word into ``(G, a, p, z, z')``, or None when malformed."""
    items = try_decode(w, 5)
    if items is None:
        return None
    G = _numeral(items[0], strict)
    a = _numeral(items[1], strict)
    if G is None or a is None:
        return None
    return G, a, items[2], items[3], items[4]


def decide_direct(o: FamilyOracle, w: str, strict: bool = True) -> bool:
    parts = parse_word(w, strict)
    if parts is None:
        return False
    G, a, p, z, z2 = parts
    return decide_slice(o, G, a, p, len(z), len(z2), strict)


def decide_binary_direct(o: FamilyOracle, w: str, strict: bool = True) -> bool:
    parts = parse_word(w, strict)
    if parts is None:
        return False
    G, a, p, nb, kb = parts
    n = _numeral(nb, strict)
    k = _numeral(kb, strict)
    if n is None or k is None:
        return False
    return decide_slice(o, G, a, p, n, k, strict)


def decode_path(p: str, strict: bool = True) -> list[int] | None:
    items = try_decode(p)
    if not items:
        return None
    steps = []
    for b in items:
        v = _numeral(b, strict)
        if v is None:
            return None
        steps.append(v)
    return steps


def walk_path(o: FamilyOracle, G: int, steps: Iterable[int], n: int, k: int) -> int | None:
    """Follow predecessor positions from G; None when a step leaves the circuit."""
    if o.type_of(G, n, k) is None:
        return None
    cur = G
    for s in steps:
        cur = o.pth_input(cur, s, n, k)
        if cur is None:
            return None
    return cur


def decide_extended_naive(o: FamilyOracle, w: str, strict: bool = True) -> bool:
    parts = parse_word(w, strict)
    if parts is None:
        return False
    G, a, p, z, z2 = parts
    n, k = len(z), len(z2)
    if p == "":
        return decide_slice(o, G, a, p, n, k, strict)
    steps = decode_path(p, strict)
    if steps is None:
        return False
    return walk_path(o, G, steps, n, k) == a


def words_of_circuit(c: Circuit, n: int, k: int) -> frozenset:
    words = set()
    for gid, g in c.gates.items():
        G = gate_number(gid)
        if g.type is GateType.INPUT:
            continue
        words.add(type_word(G, TYPE_CODE[g.type], n, k))
        for pos, pred in enumerate(g.preds):
            words.add(edge_word(G, gate_number(pred), pos, n, k))
    return frozenset(words)


def enumerate_direct_words(o: FamilyOracle, n: int, k: int, cap: int = DEFAULT_CAP) -> frozenset:
    """Every direct-language word of slice (n, k), with all-ones padding."""
    return words_of_circuit(materialize(o, n, k, cap), n, k)


def enumerate_paths(c: Circuit, max_len: int, start=None):
    """Yield ``(G, steps, target)`` for every path of length 1..max_len.

    Paths are yielded in depth-first order, which keeps enumeration
    deterministic.  ``start`` restricts the start gates.
    """
    starts = sorted(c.gates, key=gate_number) if start is None else start
    for G in starts:
        stack = [(G, ())]
        while stack:
            cur, steps = stack.pop()
            if steps:
                yield gate_number(G), steps, gate_number(cur)
            if len(steps) == max_len:
                continue
            preds = c.gates[cur].preds
            for pos in range(len(preds) - 1, -1, -1):
                stack.append((preds[pos], steps + (pos,)))


def _item(b: str) -> str:
    return delta(len(b)) + "01" + b


def path_words(c: Circuit, max_len: int, k: int = 0):
    """Yield the encoded extended word of every path of length 1..max_len.

    Same order as :func:`enumerate_paths`; the encodings are built step by
    step so that large circuits stay cheap to enumerate.
    """
    n = c.n_inputs
    num = {g: gate_number(g) for g in c.gates}
    enc = {g: _item(nat_to_bits(v)) for g, v in num.items()}
    tail = _item("1" * n) + _item("1" * k)
    steps = {}
    for G in sorted(c.gates, key=gate_number):
        head = enc[G]
        stack = [(G, "", 0)]
        while stack:
            cur, p, depth = stack.pop()
            if depth:
                yield head + enc[cur] + _item(p) + tail
            if depth == max_len:
                continue
            preds = c.gates[cur].preds
            for pos in range(len(preds) - 1, -1, -1):
                s = steps.get(pos)
                if s is None:
                    s = steps[pos] = _item(nat_to_bits(pos))
                stack.append((preds[pos], p + s, depth + 1))


def consistency_check(c: Circuit, o: FamilyOracle, n: int, k: int, cap: int = DEFAULT_CAP) -> list[str]:
    """Differences between ``c`` and the oracle's slice; empty means equal."""
    try:
        ref = materialize(o, n, k, cap)
    except (BoundExceeded, InconsistentOracle) as exc:
        return [f"oracle slice unavailable: {exc}"]
    report = []
    mine = {gate_number(g): gate for g, gate in c.gates.items()}
    theirs = {gate_number(g): gate for g, gate in ref.gates.items()}
    if c.n_inputs != ref.n_inputs:
        report.append(f"input count {c.n_inputs} != {ref.n_inputs}")
    outs = [gate_number(x) for x in c.outputs]
    ref_outs = [gate_number(x) for x in ref.outputs]
    if outs != ref_outs:
        report.append(f"outputs {outs} != {ref_outs}")
    for G in sorted(set(mine) | set(theirs)):
        if G not in theirs:
            report.append(f"gate {G}: not in the family slice")
            continue
        if G not in mine:
            report.append(f"gate {G}: missing from the circuit")
            continue
        g, h = mine[G], theirs[G]
        if g.type is not h.type:
            report.append(f"gate {G}: type {g.type.value} != {h.type.value}")
        gp = [gate_number(x) for x in g.preds]
        hp = [gate_number(x) for x in h.preds]
        for pos in range(max(len(gp), len(hp))):
            x = gp[pos] if pos < len(gp) else None
            y = hp[pos] if pos < len(hp) else None
            if x != y:
                report.append(f"gate {G}, position {pos}: {x} != {y}")
    return report
