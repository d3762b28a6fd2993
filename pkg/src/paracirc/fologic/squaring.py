"""Squaring the domain: every number becomes a pair of domain elements.

With ``h`` the index of the top bit of ``|w|`` and ``P = 2^h``, a pair
``(x_hi, x_lo)`` of elements below P stands for ``x_hi * P + x_lo``, so a
formula ranges over ``0 .. P^2 - 1`` instead of ``0 .. |w|``.  For ``|w| <= 1``
there is no room for pairs and the formula is evaluated unchanged.

Atoms are lifted as follows (``i``, ``j`` pairs)::

    bit(i, j)   i_hi = 0 & ((i_lo < h & bit(i_lo, j_lo))
                           | (h <= i_lo & exists e. plus(h, e, i_lo) & bit(e, j_hi)))
    le, lt      lexicographic on (hi, lo);  eq  componentwise
    plus        componentwise with a carry from the low parts into the high parts
    X(i)        (i_hi = 0 & X(i_lo)) | (i_hi = 1 & exists v. plus(P, i_lo, v) & X(v))

``#len`` is the pair ``(1, |w| - P)``.  A numeral c becomes a pair whose value
is pinned down by c predecessor steps; an atom with a numeral that has no
pair is false, as it is for numerals beyond the domain.  Declared constants
and ``times`` are not lifted.
"""

from __future__ import annotations

from .evaluate import eval_fo
from .syntax import (
    LEN, And, Atom, Const, Iff, Implies, Not, Num, Or, Quant, Truth, Var, all_vars, atom, conj,
    disj, exists, forall, free_vars,
)


class UnsupportedAtom(ValueError):
    pass


def pair_base(n: int) -> int:
    """P for a word of length n (n >= 2)."""
    return 1 << (n.bit_length() - 1)


def squared_top(n: int) -> int:
    """Largest number reachable by r(phi) on words of length n."""
    if n <= 1:
        return n
    P = pair_base(n)
    return P * P - 1


class _Lifter:
    def __init__(self, f):
        self.used = set(all_vars(f))
        self.h = self.fresh("h")
        self.P = self.fresh("P")
        self.L = self.fresh("len_lo")

    def fresh(self, base):
        name = base
        i = 0
        while name in self.used:
            i += 1
            name = f"{base}{i}"
        self.used.add(name)
        return name

    def pair(self, t, scope):
        if isinstance(t, Var):
            return scope[t.name]
        if isinstance(t, Const) and t.name == "len":
            return Num(1), Var(self.L)
        if isinstance(t, Num):
            return scope[("num", t.value)]
        raise UnsupportedAtom(f"cannot lift term {t!r}")

    def has_value(self, hi, lo, c):
        """The pair (hi, lo) stands for the number c, via c predecessor steps."""
        if c == 0:
            return conj(atom("eq", hi, 0), atom("eq", lo, 0))
        P = Var(self.P)
        y_lo, y_hi, z_lo = self.fresh("y_lo"), self.fresh("y_hi"), self.fresh("y_lo")
        within = conj(Not(atom("eq", lo, 0)),
                      exists(y_lo, conj(atom("plus", y_lo, 1, lo), self.has_value(hi, Var(y_lo), c - 1))))
        borrow = conj(atom("eq", lo, 0), Not(atom("eq", hi, 0)),
                      exists(y_hi, conj(atom("plus", y_hi, 1, hi), exists(z_lo, conj(
                          atom("plus", z_lo, 1, P), self.has_value(Var(y_hi), Var(z_lo), c - 1))))))
        return disj(within, borrow)

    def lift_numerals(self, f, scope):
        """Bind a pair for every numeral of atom f, then lift it."""
        nums = sorted({a.value for a in f.args if isinstance(a, Num)})
        if not nums:
            return self.lift_atom(f, scope)
        P = Var(self.P)
        inner = dict(scope)
        binders = []
        for c in nums:
            hi, lo = self.fresh(f"n{c}_hi"), self.fresh(f"n{c}_lo")
            inner[("num", c)] = (Var(hi), Var(lo))
            binders.append((hi, lo, c))
        out = self.lift_atom(f, inner)
        for hi, lo, c in reversed(binders):
            out = exists(hi, conj(atom("lt", hi, P), exists(lo, conj(
                atom("lt", lo, P), self.has_value(Var(hi), Var(lo), c), out))))
        return out

    def lift(self, f, scope):
        if isinstance(f, Truth):
            return f
        if isinstance(f, Not):
            return Not(self.lift(f.arg, scope))
        if isinstance(f, And):
            return And(tuple(self.lift(p, scope) for p in f.parts))
        if isinstance(f, Or):
            return Or(tuple(self.lift(p, scope) for p in f.parts))
        if isinstance(f, Implies):
            return Implies(self.lift(f.left, scope), self.lift(f.right, scope))
        if isinstance(f, Iff):
            return Iff(self.lift(f.left, scope), self.lift(f.right, scope))
        if isinstance(f, Quant):
            hi, lo = self.fresh(f.var + "_hi"), self.fresh(f.var + "_lo")
            inner = dict(scope)
            inner[f.var] = (Var(hi), Var(lo))
            body = self.lift(f.body, inner)
            P = Var(self.P)
            if f.kind == "forall":
                return forall(hi, Implies(atom("lt", hi, P), forall(lo, Implies(atom("lt", lo, P), body))))
            return exists(hi, conj(atom("lt", hi, P), exists(lo, conj(atom("lt", lo, P), body))))
        if isinstance(f, Atom):
            return self.lift_numerals(f, scope)
        raise TypeError(f"not a formula: {f!r}")

    def lift_atom(self, f, scope):
        if f.pred == "times":
            raise UnsupportedAtom("times is not lifted")
        args = [self.pair(a, scope) for a in f.args]
        h, P = Var(self.h), Var(self.P)
        if f.pred == "eq":
            (a0, a1), (b0, b1) = args
            return conj(atom("eq", a0, b0), atom("eq", a1, b1))
        if f.pred in ("le", "lt"):
            (a0, a1), (b0, b1) = args
            return disj(atom("lt", a0, b0), conj(atom("eq", a0, b0), atom(f.pred, a1, b1)))
        if f.pred == "bit":
            (i0, i1), (j0, j1) = args
            e = self.fresh("e")
            low = conj(atom("lt", i1, h), atom("bit", i1, j1))
            high = conj(atom("le", h, i1), exists(e, conj(atom("plus", h, e, i1), atom("bit", e, j0))))
            return conj(atom("eq", i0, 0), disj(low, high))
        if f.pred == "X":
            (i0, i1), = args
            v = self.fresh("v")
            return disj(conj(atom("eq", i0, 0), atom("X", i1)),
                        conj(atom("eq", i0, 1), exists(v, conj(atom("plus", P, i1, v), atom("X", v)))))
        if f.pred == "plus":
            (a0, a1), (b0, b1), (c0, c1) = args
            d, t = self.fresh("d"), self.fresh("t")
            plain = conj(atom("plus", a1, b1, c1), atom("plus", a0, b0, c0))
            carry = conj(
                exists(d, conj(atom("plus", a1, d, P), atom("plus", d, c1, b1))),
                exists(t, conj(atom("plus", a0, b0, t), atom("plus", t, 1, c0))))
            return disj(plain, carry)
        raise UnsupportedAtom(f"unknown predicate {f.pred}")


def _check_liftable(f):
    if free_vars(f):
        raise UnsupportedAtom(f"free variables {sorted(free_vars(f))} cannot be lifted")

    def walk(g):
        if isinstance(g, Atom):
            for a in g.args:
                if isinstance(a, Const) and a.name != "len":
                    raise UnsupportedAtom(f"constant #{a.name} is not lifted")
            if g.pred == "times":
                raise UnsupportedAtom("times is not lifted")
        for c in (g.parts if isinstance(g, (And, Or)) else
                  (g.left, g.right) if isinstance(g, (Implies, Iff)) else
                  (g.arg,) if isinstance(g, Not) else
                  (g.body,) if isinstance(g, Quant) else ()):
            walk(c)

    walk(f)


def square_domain(f):
    """r(f): f evaluated over pairs of domain elements."""
    _check_liftable(f)
    lf = _Lifter(f)
    body = lf.lift(f, {})
    h, P, L = Var(lf.h), Var(lf.P), Var(lf.L)
    s, t = lf.fresh("s"), lf.fresh("t")
    # h is the top bit of |w|, P = 2^h and |w| = P + len_lo
    setup = conj(
        atom("bit", h, LEN),
        forall(s, Implies(atom("bit", s, LEN), atom("le", s, h))),
        atom("bit", h, P),
        forall(t, Implies(atom("bit", t, P), atom("eq", t, h))),
        atom("plus", P, L, LEN),
    )
    small = conj(Not(atom("lt", 1, LEN)), f)
    big = exists(lf.h, conj(atom("lt", h, LEN),
                            exists(lf.P, conj(atom("le", P, LEN),
                                              exists(lf.L, conj(atom("lt", L, P), setup, atom("lt", 1, LEN), body))))))
    return disj(small, big)


def eval_integer(f, m, consts=None) -> bool:
    """f evaluated with plain integer semantics over the squared range."""
    w = m if isinstance(m, str) else m.w
    return eval_fo(f, w, consts, top=squared_top(len(w)))
