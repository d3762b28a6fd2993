"""Built-in parameterized problems and the families of circuits deciding them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import isqrt
from typing import Callable, Iterable

from .circuit import GateType
from .conlang import (
    DEFAULT_CAP, FamilyOracle, decide_binary_direct, decide_direct, decide_extended_naive,
    materialize, path_words, words_of_circuit,
)

A, O, N, C0, C1 = GateType.AND, GateType.OR, GateType.NOT, GateType.CONST0, GateType.CONST1


class UnknownFamily(KeyError):
    pass


@dataclass(frozen=True)
class ParamProblem:
    name: str
    membership: Callable[[str], bool]
    kappa: Callable[[str], int]


class TableFamily(FamilyOracle):
    """Family given slice by slice as a table of its non-input gates.

    Subclasses implement ``internal(n, k)`` returning ``{G: (type, preds)}``.
    Input gates ``0 .. n-1`` are implicit.
    """

    depth = 1

    def __init__(self):
        self._cache = {}

    def internal(self, n: int, k: int) -> dict:
        raise NotImplementedError

    def _slice(self, n, k):
        key = (n, k)
        if key not in self._cache:
            if len(self._cache) > 4096:
                self._cache.clear()
            self._cache[key] = self.internal(n, k)
        return self._cache[key]

    def type_of(self, G, n, k):
        if 0 <= G < n:
            return GateType.INPUT
        entry = self._slice(n, k).get(G)
        return None if entry is None else entry[0]

    def pth_input(self, G, p, n, k):
        if G < n:
            return None
        entry = self._slice(n, k).get(G)
        if entry is None or p >= len(entry[1]):
            return None
        return entry[1][p]

    def numbering_bound(self, n, k):
        return max(self._slice(n, k), default=n) + 1

    def depth_bound(self, k):
        return self.depth


class EqualityFamily(FamilyOracle):
    """Circuits checking ``x0 = x_{i-1}`` and ``x_{n-i} = x_{n-1}`` for i in 2..k.

    At (5, 2) this is the 14-gate circuit with inputs 0-4, output And 5, top
    Or gates 6 and 7, And gates 8 and 10, Not gates 9 and 11 and inner Or
    gates 12 and 13.  Each equality test a = b is ``(a & b) | !(a | b)``.
    Gates are computed arithmetically, so slices of any size answer at once.
    """

    name = "fig1-equality"

    @staticmethod
    def comparators(n, k):
        return 2 * max(0, min(k, n) - 1)

    def _operands(self, c, n):
        i = c // 2 + 2
        return (0, i - 1) if c % 2 == 0 else (n - i, n - 1)

    def _locate(self, G, n, k):
        J = self.comparators(n, k)
        base = n + 1
        if G < 0:
            return None
        if G < n:
            return ("input", 0)
        if G == n:
            return ("out", 0)
        r = G - base
        if r < J:
            return ("top", r)
        if r < 3 * J:
            c, odd = divmod(r - J, 2)
            return ("not", c) if odd else ("and", c)
        if r < 4 * J:
            return ("inner", r - 3 * J)
        return None

    def type_of(self, G, n, k):
        loc = self._locate(G, n, k)
        if loc is None:
            return None
        return {"input": GateType.INPUT, "out": A, "top": O, "and": A,
                "not": N, "inner": O}[loc[0]]

    def pth_input(self, G, p, n, k):
        loc = self._locate(G, n, k)
        if loc is None:
            return None
        kind, c = loc
        J = self.comparators(n, k)
        base = n + 1
        if kind == "out":
            return base + p if p < J else None
        if kind == "top":
            return base + J + 2 * c + p if p < 2 else None
        if kind == "not":
            return base + 3 * J + c if p == 0 else None
        if kind in ("and", "inner"):
            return self._operands(c, n)[p] if p < 2 else None
        return None

    def numbering_bound(self, n, k):
        return n + 1 + 4 * self.comparators(n, k)

    def depth_bound(self, k):
        return 4


class SqrtWireFamily(TableFamily):
    """Output is input ``isqrt(n)`` (0-based), or constant 0 when that is past the end."""

    name = "sqrt-wire"

    def internal(self, n, k):
        r = isqrt(n)
        return {n: (O, (r,) if r < n else ())}


class ConstFamily(TableFamily):
    depth = 0

    def __init__(self, value: bool):
        super().__init__()
        self.value = value
        self.name = "const1" if value else "const0"

    def internal(self, n, k):
        # an empty And is 1, an empty Or is 0
        return {n: (A if self.value else O, ())}


class IdentityWireFamily(TableFamily):
    name = "identity-wire"

    def internal(self, n, k):
        return {n: (O, (0,) if n else ())}


class GateFamily(TableFamily):
    """Families used as replacement circuits: a forwarding Or over one gate.

    ``kind`` is ``and``/``or`` (over all inputs) or ``not-first`` (negates
    input 0).  On zero inputs ``not-first`` negates an empty Or.
    """

    depth = 2

    def __init__(self, kind: str):
        super().__init__()
        self.kind = kind
        self.name = {"and": "and-gate", "or": "or-gate", "not-first": "not-first-input"}[kind]

    def internal(self, n, k):
        if self.kind == "not-first":
            if n:
                return {n: (O, (n + 1,)), n + 1: (N, (0,))}
            return {n: (O, (n + 1,)), n + 1: (N, (n + 2,)), n + 2: (O, ())}
        t = A if self.kind == "and" else O
        return {n: (O, (n + 1,)), n + 1: (t, tuple(range(n)))}

    def depth_bound(self, k):
        return 3 if self.kind == "not-first" else 2


def fig1_predicate(x: str, k: int | None = None) -> bool:
    n = len(x)
    k = isqrt(n) if k is None else k
    return all(x[0] == x[i - 1] and x[n - i] == x[n - 1] for i in range(1, min(k, n) + 1))


def _sqrt_bit(x: str) -> bool:
    r = isqrt(len(x))
    return r < len(x) and x[r] == "1"


_REGISTRY = {
    "fig1-equality": (lambda: ParamProblem("fig1-equality", fig1_predicate, lambda x: isqrt(len(x))),
                      EqualityFamily),
    "sqrt-wire": (lambda: ParamProblem("sqrt-wire", _sqrt_bit, lambda x: 0), SqrtWireFamily),
    "const0": (lambda: ParamProblem("const0", lambda x: False, lambda x: 0), lambda: ConstFamily(False)),
    "const1": (lambda: ParamProblem("const1", lambda x: True, lambda x: 0), lambda: ConstFamily(True)),
    "identity-wire": (lambda: ParamProblem("identity-wire", lambda x: x[:1] == "1", lambda x: 0),
                      IdentityWireFamily),
    "and-gate": (lambda: ParamProblem("and-gate", lambda x: "0" not in x, lambda x: 0),
                 lambda: GateFamily("and")),
    "or-gate": (lambda: ParamProblem("or-gate", lambda x: "1" in x, lambda x: 0),
                lambda: GateFamily("or")),
    "not-first-input": (lambda: ParamProblem("not-first-input", lambda x: x[:1] != "1", lambda x: 0),
                        lambda: GateFamily("not-first")),
}

# the problems every acceptance-level property is checked on
PRIMARY_FAMILIES = ("fig1-equality", "sqrt-wire", "const0", "const1", "identity-wire")


def names() -> list[str]:
    return list(_REGISTRY)


def builtin(name: str) -> tuple[ParamProblem, FamilyOracle]:
    try:
        problem, family = _REGISTRY[name]
    except KeyError:
        raise UnknownFamily(name) from None
    return problem(), family()


def oracle(name: str) -> FamilyOracle:
    return builtin(name)[1]


# uniformity witnesses ---------------------------------------------------------------

WITNESS_KINDS = ("machine-BD", "machine-D", "fo-D", "fo-E")


@dataclass(frozen=True)
class Budget:
    """Step budget ``c * (size + f(k))``, or ``c * (log2 size + f(k))`` when
    ``scale == "log"``.  ``size`` is the length of the tested word and f is
    a lookup table for k = 0..8."""

    c: int
    f: tuple = (0,) * 9
    scale: str = "linear"

    def __post_init__(self):
        if self.c < 0 or any(v < 0 for v in self.f):
            raise ValueError("budgets are nonnegative")
        if any(a > b for a, b in zip(self.f, self.f[1:])):
            raise ValueError("the f table must be nondecreasing")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"unknown scale {self.scale!r}")

    def __call__(self, size: int, k: int) -> int:
        if not 0 <= k < len(self.f):
            raise ValueError(f"the f table covers k <= {len(self.f) - 1}, not {k}")
        base = size if self.scale == "linear" else max(1, size).bit_length()
        return self.c * (base + self.f[k])


@dataclass(frozen=True)
class UniformityWitness:
    """A machine or sentence claimed to decide a connection language.

    ``machine-BD`` runs a deterministic machine on binary words, ``machine-D``
    a random-access machine on padded words, ``fo-D`` and ``fo-E`` evaluate
    a sentence on the word model of padded direct or extended words.
    """

    kind: str
    body: object
    bound: Callable[[int, int], int] | None = None
    name: str = "witness"

    def __post_init__(self):
        if self.kind not in WITNESS_KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if self.kind.startswith("machine") and self.bound is None:
            raise ValueError("machine witnesses need a step budget")

    @property
    def is_machine(self) -> bool:
        return self.kind.startswith("machine")


@dataclass(frozen=True)
class WitnessLine:
    n: int
    k: int
    word: str
    member: bool
    accepted: bool
    steps: int | None = None
    budget: int | None = None

    @property
    def wrong(self) -> bool:
        return self.member != self.accepted

    @property
    def over_budget(self) -> bool:
        return self.budget is not None and (self.steps is None or self.steps > self.budget)

    def text(self) -> str:
        verdict = "accept" if self.accepted else "reject"
        if self.wrong:
            verdict = "false-" + verdict
        steps = "-" if self.steps is None else str(self.steps)
        budget = "-" if self.budget is None else str(self.budget)
        return f"({self.n},{self.k}) {self.word or 'eps'} {verdict} {steps} {budget}"


@dataclass
class WitnessReport:
    witness: str
    family: str
    lines: list = field(default_factory=list)

    @property
    def wrong(self) -> list:
        return [ln for ln in self.lines if ln.wrong]

    @property
    def over_budget(self) -> list:
        return [ln for ln in self.lines if ln.over_budget]

    @property
    def ok(self) -> bool:
        return not self.wrong and not self.over_budget

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def summary(self) -> str:
        slices = len({(ln.n, ln.k) for ln in self.lines})
        members = sum(ln.member for ln in self.lines)
        return (f"{self.witness} on {self.family}: {len(self.lines)} words on {slices} slices "
                f"({members} members), {len(self.wrong)} wrong verdicts, "
                f"{len(self.over_budget)} over budget: {'ok' if self.ok else 'FAIL'}")

    def text(self, only_violations: bool = False) -> str:
        shown = [ln for ln in self.lines if not only_violations or ln.wrong or ln.over_budget]
        return "".join(ln.text() + "\n" for ln in shown) + self.summary() + "\n"


def _mutations(w: str, rng: random.Random) -> str:
    op = rng.randrange(5)
    if not w or op == 0:
        return "".join(rng.choice("01") for _ in range(rng.randint(0, max(4, len(w)))))
    i = rng.randrange(len(w))
    if op == 1:
        return w[:i] + "10"[int(w[i])] + w[i + 1:]
    if op == 2:
        return w[:i] + w[i + 1:]
    if op == 3:
        return w[:i] + rng.choice("01") + w[i:]
    j = rng.randint(i, len(w))
    return w[:i] + w[j:] if rng.random() < 0.5 else w + w[i:j]


def fuzz_non_words(members: Iterable[str], reference: Callable[[str], bool], count: int,
                   rng: random.Random) -> list[str]:
    """Up to ``count`` distinct words near the members that the reference rejects."""
    pool = sorted(members)
    out, seen = [], set(pool)
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        w = _mutations(rng.choice(pool) if pool else "", rng)
        if w in seen:
            continue
        seen.add(w)
        if not reference(w):
            out.append(w)
    return out


def _slice_words(o: FamilyOracle, kind: str, n: int, k: int, max_path: int, cap: int) -> list[str]:
    c = materialize(o, n, k, cap)
    direct = sorted(words_of_circuit(c, n, k))
    if kind == "machine-BD":
        return [w.to_binary_bits() for w in direct]
    types = [w.to_bits() for w in direct if w.is_type_word]
    if kind == "fo-E":
        return types + list(path_words(c, max_path, k))
    return [w.to_bits() for w in direct]


def _reference(o: FamilyOracle, kind: str) -> Callable[[str], bool]:
    if kind == "machine-BD":
        return lambda w: decide_binary_direct(o, w)
    if kind == "fo-E":
        return lambda w: decide_extended_naive(o, w)
    return lambda w: decide_direct(o, w)


def _runner(w: UniformityWitness, step_cap: int):
    from .fologic import eval_fo
    from .machines import simulate_dtm, simulate_ratm

    if w.kind == "machine-BD":
        return lambda x: simulate_dtm(w.body, x, step_cap)
    if w.kind == "machine-D":
        return lambda x: simulate_ratm(w.body, x, step_cap)
    return lambda x: eval_fo(w.body, x)


def check_witness(o: FamilyOracle, w: UniformityWitness, grid: Iterable[tuple[int, int]],
                  seed: int = 0, fuzz: int = 20, max_path: int = 3, cap: int = DEFAULT_CAP,
                  step_cap: int = 1 << 20) -> WitnessReport:
    """Run a witness on every word of each grid slice and on fuzzed non-words.

    Machine witnesses also have their step counts held against the budget.
    A machine that runs out of ``step_cap`` counts as rejecting and over budget.
    """
    rng = random.Random(seed)
    reference = _reference(o, w.kind)
    run = _runner(w, step_cap)
    report = WitnessReport(w.name, getattr(o, "name", "family"))
    for n, k in sorted(set(grid)):
        members = _slice_words(o, w.kind, n, k, max_path, cap)
        words = [(x, True) for x in members]
        words += [(x, False) for x in fuzz_non_words(members, reference, fuzz, rng)]
        for x, member in words:
            if w.is_machine:
                r = run(x)
                report.lines.append(WitnessLine(n, k, x, member, r.accepted, r.steps, w.bound(len(x), k)))
            else:
                report.lines.append(WitnessLine(n, k, x, member, bool(run(x))))
    return report


def _sqrt_wire_fo():
    from .fologic.library import sqrt_wire_connection_formula
    return UniformityWitness("fo-D", sqrt_wire_connection_formula(), name="sqrt-wire-fo")


def _const_bd(code, bound, name):
    from .machines.library import const_bd_machine
    return UniformityWitness("machine-BD", const_bd_machine(code), bound, name=name)


def _accept_everything():
    from .machines.library import dtm
    return UniformityWitness("machine-BD", dtm("accept-now"), Budget(1, (1,) * 9), name="accept-everything")


# name -> (family, witness factory, default grid, expected to pass)
WITNESSES = {
    "sqrt-wire-fo": ("sqrt-wire", _sqrt_wire_fo, tuple((n, 0) for n in range(37)), True),
    "const1-bd": ("const1", lambda: _const_bd(0, Budget(4, (4,) * 9), "const1-bd"),
                  tuple((n, k) for n in range(13) for k in range(4)), True),
    "const0-bd": ("const0", lambda: _const_bd(1, Budget(4, (4,) * 9), "const0-bd"),
                  tuple((n, k) for n in range(13) for k in range(4)), True),
    "const1-bd-zero-budget": ("const1", lambda: _const_bd(0, Budget(0), "const1-bd-zero-budget"),
                              tuple((n, k) for n in range(6) for k in range(2)), False),
    "fig1-accept-everything": ("fig1-equality", _accept_everything,
                               tuple((n, isqrt(n)) for n in range(1, 7)), False),
}


def witness(name: str):
    """``(oracle, witness, default grid, expected to pass)`` for a registered witness."""
    try:
        family, make, grid, expected = WITNESSES[name]
    except KeyError:
        raise KeyError(f"unknown witness {name!r}; known: {', '.join(WITNESSES)}") from None
    return oracle(family), make(), grid, expected
