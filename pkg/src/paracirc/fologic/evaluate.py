"""Model checking on word models.

The domain of the model of ``w`` is ``0..|w|``.  ``X(i)`` holds when bit i of
w is 1; it is false at ``i = |w|``.  ``plus`` and ``times`` are relations, so
a sum or product beyond the domain simply has no witness.  Numerals and
declared constants outside the domain make every atom mentioning them false.

:func:`eval_fo` compiles the formula into closures and narrows quantifier
ranges using guards such as ``exists x. lt(x, t) & ...`` or
``forall x. plus(a, b, x) -> ...``.  :func:`eval_brute` is a plain
tree-walking interpreter that runs through the whole domain every time; the
two are kept independent so they can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .syntax import (
    And, Atom, Const, Iff, Implies, Not, Num, Or, Quant, QuantifierBlock, Truth, Var, free_vars,
)


class UnboundVariable(ValueError):
    pass


@dataclass(frozen=True)
class WordModel:
    w: str

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def top(self) -> int:
        return len(self.w)

    def X(self, i: int) -> bool:
        return 0 <= i < len(self.w) and self.w[i] == "1"


def _model(m) -> WordModel:
    return m if isinstance(m, WordModel) else WordModel(m)


def _const_value(name, n, consts):
    if name == "len":
        return n
    for key in ("#" + name, name):
        if key in consts:
            return consts[key]
    raise UnboundVariable(f"constant #{name} has no value")


def _relation(pred, xbits):
    if pred == "le":
        return lambda a, b: a <= b
    if pred == "lt":
        return lambda a, b: a < b
    if pred == "eq":
        return lambda a, b: a == b
    if pred == "bit":
        return lambda i, j: (j >> i) & 1 == 1
    if pred == "plus":
        return lambda a, b, c: a + b == c
    if pred == "times":
        return lambda a, b, c: a * b == c
    if pred == "X":
        return lambda i: xbits(i)
    raise ValueError(f"unknown predicate {pred}")


# compiled evaluation -----------------------------------------------------------

class _Compiler:
    def __init__(self, m: WordModel, top: int, consts: Mapping):
        self.m, self.top, self.consts = m, top, consts
        self.slots = 0

    def term(self, t, scope):
        """A getter env -> value, or None for a term outside the domain."""
        if isinstance(t, Var):
            if t.name not in scope:
                raise UnboundVariable(f"variable {t.name} is free")
            i = scope[t.name]
            return lambda e, i=i: e[i]
        v = t.value if isinstance(t, Num) else _const_value(t.name, self.m.n, self.consts)
        if not 0 <= v <= self.top:
            return None
        return lambda e, v=v: v

    def formula(self, f, scope):
        if isinstance(f, Truth):
            v = f.value
            return lambda e: v
        if isinstance(f, Atom):
            gets = [self.term(a, scope) for a in f.args]
            if any(g is None for g in gets):
                return lambda e: False
            rel = _relation(f.pred, self.m.X)
            if len(gets) == 1:
                g0, = gets
                return lambda e: rel(g0(e))
            if len(gets) == 2:
                g0, g1 = gets
                return lambda e: rel(g0(e), g1(e))
            g0, g1, g2 = gets
            return lambda e: rel(g0(e), g1(e), g2(e))
        if isinstance(f, Not):
            a = self.formula(f.arg, scope)
            return lambda e: not a(e)
        if isinstance(f, And):
            ps = [self.formula(p, scope) for p in f.parts]
            return lambda e: all(p(e) for p in ps)
        if isinstance(f, Or):
            ps = [self.formula(p, scope) for p in f.parts]
            return lambda e: any(p(e) for p in ps)
        if isinstance(f, Implies):
            a, b = self.formula(f.left, scope), self.formula(f.right, scope)
            return lambda e: (not a(e)) or b(e)
        if isinstance(f, Iff):
            a, b = self.formula(f.left, scope), self.formula(f.right, scope)
            return lambda e: a(e) == b(e)
        if isinstance(f, Quant):
            return self.quantifier(f, scope)
        raise TypeError(f"not a formula: {f!r}")

    def quantifier(self, f, scope):
        slot = self.slots
        self.slots += 1
        inner = dict(scope)
        inner[f.var] = slot
        body = self.formula(f.body, inner)
        guard = None
        if f.kind == "exists":
            g = f.body.parts[0] if isinstance(f.body, And) else f.body
            guard = self.guard(f.var, g, scope)
        elif isinstance(f.body, Implies):
            g = f.body.left.parts[0] if isinstance(f.body.left, And) else f.body.left
            guard = self.guard(f.var, g, scope)
        top = self.top
        if guard is None:
            def candidates(e):
                return range(top + 1)
        else:
            candidates = guard

        if f.kind == "exists":
            def run(e):
                for v in candidates(e):
                    e[slot] = v
                    if body(e):
                        return True
                return False
        else:
            def run(e):
                for v in candidates(e):
                    e[slot] = v
                    if not body(e):
                        return False
                return True
        return run

    def guard(self, x, g, scope):
        """Candidate values of x outside of which atom g fails, or None."""
        if not isinstance(g, Atom):
            return None
        args = g.args
        is_x = [isinstance(a, Var) and a.name == x for a in args]
        if sum(is_x) != 1:
            return None
        others = [self.term(a, scope) for a, ix in zip(args, is_x) if not ix]
        if any(o is None for o in others):
            return lambda e: ()
        top = self.top
        p = g.pred
        if p in ("le", "lt", "eq"):
            t, = others
            if p == "eq":
                return lambda e: (t(e),)
            if is_x[0]:
                off = 1 if p == "le" else 0
                return lambda e: range(min(t(e) + off, top + 1))
            off = 1 if p == "lt" else 0
            return lambda e: range(t(e) + off, top + 1)
        if p in ("plus", "times") and is_x[2]:
            a, b = others
            if p == "plus":
                return lambda e: (s,) if (s := a(e) + b(e)) <= top else ()
            return lambda e: (s,) if (s := a(e) * b(e)) <= top else ()
        if p == "plus":
            # x + b = c or a + x = c
            b, c = others
            return lambda e: (d,) if (d := c(e) - b(e)) >= 0 else ()
        return None


def _prepare(f, m, consts, top):
    m = _model(m)
    consts = dict(consts or {})
    top = m.top if top is None else top
    comp = _Compiler(m, top, consts)
    free = sorted(free_vars(f))
    scope = {}
    for name in free:
        if name not in consts:
            raise UnboundVariable(f"variable {name} is free")
        scope[name] = comp.slots
        comp.slots += 1
    fn = comp.formula(f, scope)
    env = [0] * comp.slots
    for name, i in scope.items():
        env[i] = consts[name]
    return fn, env


def eval_fo(f, m, consts: Mapping | None = None, top: int | None = None) -> bool:
    """Truth of f in the model of m.

    ``consts`` gives values to free variables and to declared constants
    (``"#c0"`` or ``"c0"``); ``top`` overrides the largest domain element.
    """
    fn, env = _prepare(f, m, consts, top)
    return fn(env)


def define_value(f, m, top: int | None = None):
    """The unique domain element satisfying f(x), or None."""
    free = sorted(free_vars(f))
    if len(free) != 1:
        raise ValueError(f"expected exactly one free variable, found {free}")
    x, = free
    m = _model(m)
    top = m.top if top is None else top
    hits = [v for v in range(top + 1) if eval_fo(f, m, {x: v}, top)]
    return hits[0] if len(hits) == 1 else None


# brute force ------------------------------------------------------------------------

def eval_brute(f, m, consts: Mapping | None = None, top: int | None = None) -> bool:
    """Reference semantics by explicit expansion over the whole domain."""
    m = _model(m)
    consts = dict(consts or {})
    top = m.top if top is None else top

    def value(t, env):
        if isinstance(t, Var):
            if t.name in env:
                return env[t.name]
            raise UnboundVariable(f"variable {t.name} is free")
        if isinstance(t, Num):
            return t.value
        return _const_value(t.name, m.n, consts)

    def ev(f, env):
        if isinstance(f, Truth):
            return f.value
        if isinstance(f, Atom):
            vals = [value(a, env) for a in f.args]
            if any(not 0 <= v <= top for v in vals):
                return False
            return _relation(f.pred, m.X)(*vals)
        if isinstance(f, Not):
            return not ev(f.arg, env)
        if isinstance(f, And):
            return all([ev(p, env) for p in f.parts])
        if isinstance(f, Or):
            return any([ev(p, env) for p in f.parts])
        if isinstance(f, Implies):
            return (not ev(f.left, env)) or ev(f.right, env)
        if isinstance(f, Iff):
            return ev(f.left, env) == ev(f.right, env)
        results = [ev(f.body, {**env, f.var: v}) for v in range(top + 1)]
        return all(results) if f.kind == "forall" else any(results)

    env = {k: v for k, v in consts.items() if not k.startswith("#")}
    return ev(f, env)


# iteration ---------------------------------------------------------------------------

def unroll(block: QuantifierBlock, psi, t: int):
    """``t`` copies of the block in front of psi."""
    f = psi
    for _ in range(t):
        f = block.apply(f)
    return f


def eval_fo_iterated(block: QuantifierBlock, psi, t: int, m, consts: Mapping | None = None) -> bool:
    return eval_fo(unroll(block, psi, t), m, consts)
