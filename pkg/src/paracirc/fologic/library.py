"""Ready-made formulas and a random sentence generator."""

from __future__ import annotations

import random

from .syntax import (
    LEN, Atom, Const, Iff, Implies, Not, Num, QuantifierBlock, Truth, Var, atom, conj, disj,
    exists, forall, parse, parse_block,
)

# r is the integer square root of the input length
SQRT_TEXT = ("(exists c. times(r, r, c) & le(c, #len)) & "
             "(forall s. (le(r, s) & !eq(r, s)) -> !(exists c. times(s, s, c) & le(c, #len)))")

# One copy of the block turns psi(x, y) into "some z has psi(x, z) and psi(z, y)"
# on the two-vertex graph whose adjacency matrix is the first four input bits.
REACH_BLOCK_TEXT = ("(exists z. le(z, 1))(forall a. le(a, 1))"
                    "(forall b. (eq(a, x) & eq(b, z)) | (eq(a, z) & eq(b, y)))"
                    "(exists x. eq(x, a))(exists y. eq(y, b))")
EDGE_TEXT = "exists d. times(2, x, d) & exists e. plus(d, y, e) & X(e)"
REACH_PSI_TEXT = f"({EDGE_TEXT}) | eq(x, y)"

FORMULAS = {
    "sqrt": SQRT_TEXT,
    "some-one": "exists i. X(i)",
    "all-ones": "forall i. lt(i, #len) -> X(i)",
    "one-at": "X(i)",
    "edge": EDGE_TEXT,
    "reach-psi": REACH_PSI_TEXT,
    "beyond-length": "exists j. exists i. bit(i, j) & (forall k. bit(k, #len) -> lt(k, i))",
}


def formula(name: str):
    try:
        return parse(FORMULAS[name])
    except KeyError:
        raise KeyError(f"unknown formula {name!r}; known: {', '.join(sorted(FORMULAS))}") from None


def sqrt_formula():
    return parse(SQRT_TEXT)


def reach_block() -> QuantifierBlock:
    return parse_block(REACH_BLOCK_TEXT)


def reach_psi():
    return parse(REACH_PSI_TEXT)


def reach_reference(w: str, x: int, y: int, t: int) -> bool:
    """Path of length at most 2^t from x to y in the two-vertex graph of w."""
    def edge(u, v):
        i = 2 * u + v
        return i < len(w) and w[i] == "1"

    reach = {(u, v) for u in (0, 1) for v in (0, 1) if u == v or edge(u, v)}
    for _ in range(t):
        reach = {(u, v) for u in (0, 1) for v in (0, 1)
                 if any((u, z) in reach and (z, v) in reach for z in (0, 1))}
    return (x, y) in reach


# random sentences ----------------------------------------------------------------

def random_sentence(rng: random.Random, depth: int = 3, liftable: bool = False, width: int = 2):
    """A random sentence with at most ``depth`` nested quantifiers.

    ``liftable`` restricts to what :func:`square_domain` accepts: no declared
    constants and no ``times``.
    """
    preds = ["le", "lt", "eq", "bit", "plus", "X"] + ([] if liftable else ["times"])
    names = "ijkmnpq"

    def term(bound):
        opts = [Var(v) for v in bound] + [LEN, Num(rng.randrange(4))]
        return rng.choice(opts)

    def gen(bound, d, budget):
        r = rng.random()
        if budget == 0 or (d == depth or r < 0.3) and bound:
            if not bound and d < depth:
                return quant(bound, d, budget)
            p = rng.choice(preds)
            arity = {"X": 1, "plus": 3, "times": 3}.get(p, 2)
            return Atom(p, tuple(term(bound) for _ in range(arity)))
        if d < depth and (r < 0.6 or not bound):
            return quant(bound, d, budget)
        c = rng.randrange(4)
        if c == 0:
            return Not(gen(bound, d, budget - 1))
        parts = tuple(gen(bound, d, budget - 1) for _ in range(rng.randint(2, width)))
        if c == 1:
            return conj(*parts)
        if c == 2:
            return disj(*parts)
        return Implies(parts[0], parts[1]) if rng.random() < 0.7 else Iff(parts[0], parts[1])

    def quant(bound, d, budget):
        v = names[len(bound) % len(names)]
        body = gen(bound + [v], d + 1, max(1, budget - 1))
        return forall(v, body) if rng.random() < 0.5 else exists(v, body)

    f = gen([], 0, 4)
    if not isinstance(f, Truth) and f is not None:
        return f
    return Truth(True)


# the connection language of sqrt-wire --------------------------------------------------

class _Names:
    def __init__(self):
        self.count = {}

    def __call__(self, base):
        i = self.count.get(base, 0)
        self.count[base] = i + 1
        return f"{base}{i}"


def _value(ps, L, v, fresh):
    """The payload of length L at ps is the canonical numeral of v."""
    j, a, j1, idx, i = (fresh(b) for b in ("j", "a", "jj", "idx", "i"))
    digits = forall(j, Implies(atom("lt", j, L), exists(a, conj(
        atom("plus", ps, j, a),
        exists(j1, conj(atom("plus", j, 1, j1), exists(idx, conj(
            atom("plus", idx, j1, L),
            Iff(atom("X", a), atom("bit", idx, v))))))))))
    short = forall(i, Implies(atom("bit", i, v), atom("lt", i, L)))
    return conj(atom("le", 1, L), disj(atom("eq", L, 1), atom("X", ps)), digits, short)


def _digit_at(s, j, fresh, check):
    """check(a) for a = s + 2j, the position of the j-th doubled length digit."""
    jq, a = fresh("jq"), fresh("da")
    return exists(jq, conj(atom("times", 2, j, jq), exists(a, conj(atom("plus", s, jq, a), check(a)))))


def _item(s, fresh, rest):
    """An item starts at s; rest(L, ps, e) continues with its length, payload start and end."""
    m, q, sep, sep1, ps, L, e = (fresh(b) for b in ("m", "q", "sep", "sep1", "ps", "L", "e"))
    j, j2, i = fresh("j"), fresh("j"), fresh("i")

    def pair_equal(a):
        a1 = fresh("db")
        return exists(a1, conj(atom("plus", a, 1, a1), Iff(atom("X", a), atom("X", a1))))

    def digit_is_bit(a):
        j1, idx = fresh("jj"), fresh("idx")
        return exists(j1, conj(atom("plus", j2, 1, j1), exists(idx, conj(
            atom("plus", idx, j1, m), Iff(atom("X", a), atom("bit", idx, L))))))

    doubled = forall(j, Implies(atom("lt", j, m), _digit_at(s, j, fresh, pair_equal)))
    length_digits = forall(j2, Implies(atom("lt", j2, m), _digit_at(s, j2, fresh, digit_is_bit)))
    payload = exists(e, conj(atom("plus", ps, L, e), rest(L, ps, e)))
    length = exists(L, conj(atom("le", L, LEN), length_digits,
                            forall(i, Implies(atom("bit", i, L), atom("lt", i, m))), payload))
    separator = exists(sep, conj(
        atom("plus", s, q, sep),
        Not(atom("X", sep)),
        exists(sep1, conj(atom("plus", sep, 1, sep1), atom("X", sep1))),
        doubled,
        exists(ps, conj(atom("plus", sep, 2, ps), length))))
    return exists(m, conj(atom("le", 1, m), disj(atom("eq", m, 1), atom("X", s)),
                          exists(q, conj(atom("times", 2, m, q), separator))))


def sqrt_wire_connection_formula():
    """Decides the direct connection language of sqrt-wire on encoded words.

    Members are ``<n, 1, eps, z, z'>`` (the output is an Or) and, when
    ``isqrt(n) < n``, ``<n, isqrt(n), 0, z, z'>`` with ``n = |z|``.
    """
    fresh = _Names()

    def tail(items):
        (L0, p0, _), (L1, p1, _), (L2, p2, _), (L3, _, _), _ = items
        r, c, s, c2 = fresh("r"), fresh("c"), fresh("s"), fresh("c")
        is_sqrt = conj(
            exists(c, conj(atom("times", r, r, c), atom("le", c, L3))),
            forall(s, Implies(conj(atom("le", r, s), Not(atom("eq", r, s))),
                              Not(exists(c2, conj(atom("times", s, s, c2), atom("le", c2, L3)))))))
        type_word = conj(atom("eq", L2, 0), atom("eq", L1, 1), atom("X", p1))
        edge_word = conj(atom("eq", L2, 1), Not(atom("X", p2)),
                         exists(r, conj(atom("lt", r, L3), _value(p1, L1, r, fresh), is_sqrt)))
        return conj(_value(p0, L0, L3, fresh), disj(type_word, edge_word))

    def chain(start, items):
        if len(items) == 5:
            _, _, end = items[-1]
            return conj(atom("eq", end, LEN), tail(items))
        return _item(start, fresh, lambda L, ps, e: chain(e, items + [(L, ps, e)]))

    return chain(Num(0), [])
