"""First-order formulas over word models: syntax tree, parser and printer.

Text syntax::

    forall i. exists j. le(i, j) & !bit(i, j) -> X(i) <-> true

Atoms are ``le lt eq`` (or infix ``<= < =``), ``bit(i, j)`` (bit i of j,
least significant first), ``plus(a, b, c)`` (a + b = c), ``times(a, b, c)``
and ``X(i)``.  Terms are variables, numerals, ``#len`` and declared constants
``#c0``, ``#c1``, ...  Precedence from loosest: ``<->``, ``->`` (right
associative), ``|``, ``&``, ``!``.  A quantifier body extends as far right as
possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

PREDICATES = {"le": 2, "lt": 2, "eq": 2, "bit": 2, "plus": 3, "times": 3, "X": 1}
INFIX = {"<=": "le", "<": "lt", "=": "eq"}
KEYWORDS = {"forall", "exists", "true", "false"}


class FoSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# terms ------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str  # "len" or "c0", "c1", ...


@dataclass(frozen=True)
class Num:
    value: int


Term = Union[Var, Const, Num]
LEN = Const("len")


# formulas -----------------------------------------------------------------------

@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class Quant:
    kind: str  # "forall" or "exists"
    var: str
    body: object


Formula = Union[Truth, Atom, Not, And, Or, Implies, Iff, Quant]


def conj(*parts):
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, And) else (p,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts):
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Or) else (p,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def forall(var, body):
    return Quant("forall", var, body)


def exists(var, body):
    return Quant("exists", var, body)


def atom(pred, *args):
    args = tuple(Var(a) if isinstance(a, str) else Num(a) if isinstance(a, int) else a for a in args)
    if PREDICATES.get(pred) != len(args):
        raise ValueError(f"{pred} takes {PREDICATES.get(pred)} arguments")
    return Atom(pred, args)


def children(f):
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, Quant):
        return (f.body,)
    return ()


def free_vars(f, bound=frozenset()) -> set:
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Var) and a.name not in bound}
    if isinstance(f, Quant):
        return free_vars(f.body, bound | {f.var})
    out = set()
    for c in children(f):
        out |= free_vars(c, bound)
    return out


def constants(f) -> set:
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Const)}
    out = set()
    for c in children(f):
        out |= constants(c)
    return out


def all_vars(f) -> set:
    if isinstance(f, Atom):
        return {a.name for a in f.args if isinstance(a, Var)}
    out = {f.var} if isinstance(f, Quant) else set()
    for c in children(f):
        out |= all_vars(c)
    return out


def quantifier_depth(f) -> int:
    return (1 if isinstance(f, Quant) else 0) + max((quantifier_depth(c) for c in children(f)), default=0)


def is_quantifier_free(f) -> bool:
    return quantifier_depth(f) == 0


# printing -------------------------------------------------------------------------

def term_text(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return "#" + t.name
    return str(t.value)


def to_text(f, top: bool = True) -> str:
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f"{f.pred}({', '.join(term_text(a) for a in f.args)})"
    if isinstance(f, Not):
        return "!" + to_text(f.arg, top=False)
    if isinstance(f, And):
        s = " & ".join(to_text(p, top=False) for p in f.parts)
    elif isinstance(f, Or):
        s = " | ".join(to_text(p, top=False) for p in f.parts)
    elif isinstance(f, Implies):
        s = f"{to_text(f.left, top=False)} -> {to_text(f.right, top=False)}"
    elif isinstance(f, Iff):
        s = f"{to_text(f.left, top=False)} <-> {to_text(f.right, top=False)}"
    else:
        s = f"{f.kind} {f.var}. {to_text(f.body, top=True)}"
    return s if top else f"({s})"


# parsing ----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<->|->|<=|[()<=,.!&|])|(#[A-Za-z0-9_]+)|(\d+)|([A-Za-z][A-Za-z0-9_]*))")


def _tokens(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FoSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("op", m.group(1), start))
        elif m.group(2):
            out.append(("const", m.group(2)[1:], start))
        elif m.group(3):
            out.append(("num", int(m.group(3)), start))
        else:
            out.append(("ident", m.group(4), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value or t[0] not in ("op", "ident"):
            raise FoSyntaxError(f"expected {value!r}", t[2])
        return t

    def at_op(self, value):
        t = self.peek()
        return t[0] == "op" and t[1] == value

    def formula(self):
        left = self.implication()
        if self.at_op("<->"):
            self.take()
            return Iff(left, self.formula())
        return left

    def implication(self):
        left = self.disjunction()
        if self.at_op("->"):
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        parts = [self.conjunction()]
        while self.at_op("|"):
            self.take()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self):
        parts = [self.unary()]
        while self.at_op("&"):
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "!":
            self.take()
            return Not(self.unary())
        if kind == "op" and val == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "ident" and val in ("forall", "exists"):
            self.take()
            names = []
            while self.peek()[0] == "ident" and self.peek()[1] not in KEYWORDS:
                names.append(self.variable())
            if not names:
                raise FoSyntaxError("quantifier needs a variable", self.peek()[2])
            self.expect(".")
            body = self.formula()
            for name in reversed(names):
                body = Quant(val, name, body)
            return body
        if kind == "ident" and val in ("true", "false"):
            self.take()
            return Truth(val == "true")
        if kind == "ident" and val in PREDICATES and self.toks[self.i + 1][1] == "(":
            self.take()
            self.take()
            args = [self.term()]
            while self.at_op(","):
                self.take()
                args.append(self.term())
            self.expect(")")
            if len(args) != PREDICATES[val]:
                raise FoSyntaxError(f"{val} takes {PREDICATES[val]} arguments, got {len(args)}", pos)
            return Atom(val, tuple(args))
        left = self.term()
        kind2, op, pos2 = self.peek()
        if kind2 == "op" and op in INFIX:
            self.take()
            return Atom(INFIX[op], (left, self.term()))
        raise FoSyntaxError("expected a comparison after the term", pos2)

    def variable(self):
        kind, val, pos = self.take()
        if kind != "ident" or val in KEYWORDS or val == "X":
            raise FoSyntaxError("expected a variable", pos)
        return val

    def term(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(val)
        if kind == "const":
            self.take()
            if not (val == "len" or re.fullmatch(r"c\d+", val)):
                raise FoSyntaxError(f"unknown constant #{val}", pos)
            return Const(val)
        if kind == "ident":
            return Var(self.variable())
        raise FoSyntaxError("expected a term", pos)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    kind, _, pos = p.peek()
    if kind != "end":
        raise FoSyntaxError("unexpected trailing input", pos)
    return f


@dataclass(frozen=True)
class QuantifierBlock:
    """``(Q0 x0. M0)(Q1 x1. M1)...`` with quantifier-free guards."""

    entries: tuple  # of (kind, var, guard)

    def __post_init__(self):
        for kind, var, guard in self.entries:
            if kind not in ("forall", "exists"):
                raise ValueError(f"bad quantifier {kind!r}")
            if not is_quantifier_free(guard):
                raise ValueError(f"guard of {var} is not quantifier-free")

    def apply(self, psi):
        """One copy of the block in front of psi."""
        f = psi
        for kind, var, guard in reversed(self.entries):
            f = Quant(kind, var, Implies(guard, f) if kind == "forall" else conj(guard, f))
        return f

    def text(self) -> str:
        return "".join(f"({k} {v}. {to_text(g)})" for k, v, g in self.entries)


def parse_block(text: str) -> QuantifierBlock:
    p = _Parser(text)
    entries = []
    while p.at_op("("):
        p.take()
        kind, val, pos = p.take()
        if val not in ("forall", "exists"):
            raise FoSyntaxError("expected forall or exists", pos)
        var = p.variable()
        p.expect(".")
        guard = p.formula()
        p.expect(")")
        if not is_quantifier_free(guard):
            raise FoSyntaxError(f"guard of {var} must be quantifier-free", pos)
        entries.append((val, var, guard))
    kind, _, pos = p.peek()
    if kind != "end":
        raise FoSyntaxError("expected '(' starting a block entry", pos)
    if not entries:
        raise FoSyntaxError("empty quantifier block", 0)
    return QuantifierBlock(tuple(entries))
