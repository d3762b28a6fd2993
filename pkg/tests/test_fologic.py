import itertools
import random
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from paracirc.fologic import (
    FoSyntaxError, UnboundVariable, UnsupportedAtom, define_value, eval_brute, eval_fo,
    eval_fo_iterated, eval_integer, parse, parse_block, quantifier_depth, square_domain,
    squared_top, to_text, unroll,
)
from paracirc.fologic.library import (
    FORMULAS, formula, random_sentence, reach_block, reach_psi, reach_reference, sqrt_formula,
)
from paracirc.fologic.syntax import Not, Quant, Implies, conj


def words(max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)


def test_some_position_is_one():
    f = parse("exists i. X(i)")
    assert eval_fo(f, "001")
    assert not eval_fo(f, "000")
    assert not eval_fo(f, "")


def test_x_is_false_at_the_length():
    assert not eval_fo(parse("X(#len)"), "111")
    assert eval_fo(parse("exists i. eq(i, #len)"), "111")


def test_bit_is_least_significant_first():
    assert eval_fo(parse("bit(0, 5) & !bit(1, 5) & bit(2, 5)"), "00000")
    assert not eval_fo(parse("bit(0, 4)"), "0000")


def test_arithmetic_is_relational():
    # 3 + 3 is outside the domain of a word of length 4
    assert not eval_fo(parse("exists c. plus(3, 3, c)"), "0000")
    assert eval_fo(parse("exists c. plus(2, 2, c)"), "0000")
    assert not eval_fo(parse("exists c. times(3, 2, c)"), "00000")


def test_numerals_outside_the_domain():
    assert not eval_fo(parse("eq(9, 9)"), "00")
    assert eval_fo(parse("!le(9, 9)"), "00")


@pytest.mark.parametrize("n,good,bad", [(9, 3, 2), (5, 2, 1)])
def test_sqrt_formula(n, good, bad):
    f = sqrt_formula()
    w = "0" * n
    assert eval_fo(f, w, {"r": good})
    assert not eval_fo(f, w, {"r": bad})


def test_define_value():
    f = sqrt_formula()
    assert define_value(f, "0" * 16) == 4
    assert define_value(f, "0" * 15) == 3
    assert define_value(parse("X(i)"), "11") is None
    assert define_value(parse("X(i)"), "01") == 1
    with pytest.raises(ValueError):
        define_value(parse("exists i. X(i)"), "1")


def test_define_sqrt_range():
    f = sqrt_formula()
    assert [define_value(f, "1" * n) for n in range(1, 65)] == [isqrt(n) for n in range(1, 65)]


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_fo(parse("X(i)"), "1")
    with pytest.raises(UnboundVariable):
        eval_fo(parse("X(#c0)"), "1")
    assert eval_fo(parse("X(#c0)"), "01", {"#c0": 1})
    with pytest.raises(UnboundVariable):
        eval_brute(parse("X(i)"), "1")


def test_parser_errors_carry_positions():
    with pytest.raises(FoSyntaxError) as e:
        parse("exists i. X(i) &")
    assert e.value.pos == 16
    with pytest.raises(FoSyntaxError) as e:
        parse("le(i)")
    assert e.value.pos == 0
    with pytest.raises(FoSyntaxError) as e:
        parse("forall . X(0)")
    assert e.value.pos == 7
    with pytest.raises(FoSyntaxError):
        parse("X(i) $ X(j)")
    with pytest.raises(FoSyntaxError):
        parse("#foo = 1")


def test_infix_and_precedence():
    assert parse("i <= j") == parse("le(i, j)")
    assert parse("a <= a & b = c | d < e") == parse("(le(a, a) & eq(b, c)) | lt(d, e)")
    assert parse("!X(i) & X(j)") == parse("(!X(i)) & X(j)")
    f = parse("X(i) -> X(j) -> X(k)")
    assert isinstance(f, Implies) and isinstance(f.right, Implies)
    g = parse("forall i. X(i) | X(j)")
    assert isinstance(g, Quant) and g.body == parse("X(i) | X(j)")
    assert parse("forall i j. X(i)") == parse("forall i. forall j. X(i)")


@pytest.mark.parametrize("name", sorted(FORMULAS))
def test_library_formulas_print_and_parse(name):
    f = formula(name)
    assert parse(to_text(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 1 << 30))
def test_printing_round_trips(seed):
    f = random_sentence(random.Random(seed), depth=3)
    assert parse(to_text(f)) == f


def test_compiled_matches_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        f = random_sentence(rng, depth=3)
        assert quantifier_depth(f) <= 3
        w = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
        assert eval_fo(f, w) == eval_brute(f, w), (to_text(f), w)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 1 << 30), st.text("01", max_size=5))
def test_guard_duality(seed, w):
    rng = random.Random(seed)
    guard = parse(rng.choice(["lt(x, #len)", "le(x, 2)", "X(x)", "eq(x, 1)", "bit(x, #len)", "le(2, x)"]))
    body = random_sentence(rng, depth=2)
    body = conj(parse(rng.choice(["X(x)", "lt(x, 2)", "bit(0, x)"])), body)
    fa = Quant("forall", "x", Implies(guard, body))
    ex = Quant("exists", "x", conj(guard, Not(body)))
    assert eval_fo(fa, w) == (not eval_fo(ex, w))


def test_iteration_zero_copies():
    psi = parse("X(c0)")
    block = parse_block("(forall x. le(x, x))")
    assert eval_fo_iterated(block, psi, 0, "1", {"c0": 0})
    assert not eval_fo_iterated(block, psi, 0, "0", {"c0": 0})
    assert eval_fo_iterated(block, psi, 3, "1", {"c0": 0})


def test_reachability_block_matches_manual_unrolling():
    block, psi = reach_block(), reach_psi()
    step = ("exists z. le(z, 1) & forall a. le(a, 1) -> forall b. "
            "((eq(a, x) & eq(b, z)) | (eq(a, z) & eq(b, y))) -> "
            "exists x. eq(x, a) & exists y. eq(y, b) & ({})")
    manual = parse(step.format(step.format(to_text(psi))))
    assert unroll(block, psi, 2) == manual
    # both vertices must be domain elements, so |w| >= 1
    for w in words(4, 1):
        for x, y in itertools.product((0, 1), repeat=2):
            got = eval_fo_iterated(block, psi, 2, w, {"x": x, "y": y})
            assert got == eval_fo(manual, w, {"x": x, "y": y})
            assert got == reach_reference(w, x, y, 2)


def test_reachability_block_matches_search():
    block, psi = reach_block(), reach_psi()
    for w in words(4, 1):
        for x, y in itertools.product((0, 1), repeat=2):
            for t in range(4):
                assert eval_fo_iterated(block, psi, t, w, {"x": x, "y": y}) == reach_reference(w, x, y, t)


def test_iteration_composes():
    block, psi = reach_block(), reach_psi()
    for s, t in [(0, 1), (1, 1), (2, 1), (1, 3), (2, 2)]:
        both = unroll(block, psi, s + t)
        assert both == unroll(block, unroll(block, psi, t), s)
        for w in ["0110", "0100", "1001", "0010", "01"]:
            for x, y in itertools.product((0, 1), repeat=2):
                c = {"x": x, "y": y}
                assert eval_fo(both, w, c) == eval_fo_iterated(block, unroll(block, psi, t), s, w, c)


def test_block_guards_must_be_quantifier_free():
    with pytest.raises(FoSyntaxError):
        parse_block("(forall x. exists y. le(x, y))")
    with pytest.raises(FoSyntaxError):
        parse_block("")


# domain squaring ---------------------------------------------------------------

def test_squared_range():
    assert [squared_top(n) for n in range(9)] == [0, 1, 3, 3, 15, 15, 15, 15, 63]


def test_quantifier_free_sentence_is_unchanged():
    f = parse("le(#len, #len) & !lt(#len, #len)")
    r = square_domain(f)
    for w in words(5):
        assert eval_fo(r, w) == eval_fo(f, w)


def test_bit_bound_example():
    f = parse("exists j. forall i. bit(i, j) -> le(i, 1)")
    r = square_domain(f)
    for w in ["0000", "1111", "0101", "01", "0"]:
        assert eval_fo(r, w) == eval_integer(f, w)
    assert eval_fo(r, "0000")


def test_range_extension():
    f = formula("beyond-length")
    r = square_domain(f)
    assert not eval_fo(f, "0000")
    assert eval_fo(r, "0000")
    assert eval_integer(f, "0000")


def test_lifted_atoms_exhaustive():
    cases = [
        "forall i. forall j. exists k. plus(i, j, k) <-> !lt(#len, #len) & exists k. plus(i, j, k)",
        "exists i. exists j. plus(i, i, j) & lt(#len, j)",
        "forall i. X(i) -> lt(i, #len)",
        "exists i. X(i) & le(#len, i)",
        "exists i. bit(i, #len) & exists j. lt(#len, j) & bit(i, j)",
        "forall i. forall j. le(i, j) | lt(j, i)",
        "exists i. !X(i) & lt(i, #len)",
        "forall i. exists j. lt(i, j)",
        "exists i. plus(i, 2, 5) & X(i)",
        "forall i. le(3, i) -> exists j. plus(j, 1, i)",
    ]
    for text in cases:
        f = parse(text)
        r = square_domain(f)
        for w in words(6):
            assert eval_fo(r, w) == eval_integer(f, w), (text, w)


def test_random_sentences_square():
    rng = random.Random(3)
    for _ in range(40):
        f = random_sentence(rng, depth=2, liftable=True)
        r = square_domain(f)
        for n in range(7):
            w = "".join(rng.choice("01") for _ in range(n))
            assert eval_fo(r, w) == eval_integer(f, w), (to_text(f), w)


def test_unsupported_atoms():
    for text in ["exists i. times(i, i, i)", "X(#c0)", "X(i)"]:
        with pytest.raises(UnsupportedAtom):
            square_domain(parse(text))
