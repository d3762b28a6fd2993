import itertools
from math import isqrt

import pytest

from paracirc.circuit import predicate_table, truth_table
from paracirc.conlang import materialize
from paracirc.families import UnknownFamily, builtin, names


@pytest.mark.parametrize("name", names())
def test_oracle_matches_predicate(name):
    problem, o = builtin(name)
    for n in range(9):
        kappas = {problem.kappa("0" * n)}
        if name == "fig1-equality":
            kappas |= {0, 1, 2, 3}
        for k in kappas:
            c = materialize(o, n, k)
            if name == "fig1-equality":
                from paracirc.families import fig1_predicate
                expected = predicate_table(n, lambda x: fig1_predicate(x, k))
            else:
                expected = predicate_table(n, problem.membership)
            assert truth_table(c)[0] == expected, (n, k)


def test_examples():
    problem, _ = builtin("fig1-equality")
    assert problem.membership("11011")
    assert problem.kappa("11011") == 2
    sw, _ = builtin("sqrt-wire")
    assert sw.membership("000100000")
    assert not sw.membership("111011111")
    c1, _ = builtin("const1")
    assert all(c1.membership("".join(x)) for x in itertools.product("01", repeat=3))


def test_kappa_is_isqrt():
    problem, _ = builtin("fig1-equality")
    for n in range(257):
        assert problem.kappa("1" * n) == isqrt(n)


def test_unknown():
    with pytest.raises(UnknownFamily):
        builtin("nope")


# uniformity witnesses ----------------------------------------------------------

from paracirc.families import (
    WITNESSES, Budget, UniformityWitness, WitnessLine, check_witness, fuzz_non_words, oracle, witness,
)


@pytest.mark.parametrize("name", sorted(WITNESSES))
def test_registered_witnesses(name):
    o, w, grid, expected = witness(name)
    r = check_witness(o, w, grid, seed=1)
    assert r.ok is expected
    assert r.exit_status == (0 if expected else 1)
    assert any(ln.member for ln in r.lines) and any(not ln.member for ln in r.lines)


def test_negative_controls_fail_for_the_intended_reason():
    o, w, grid, _ = witness("const1-bd-zero-budget")
    r = check_witness(o, w, grid)
    assert not r.wrong and len(r.over_budget) == len(r.lines)
    o, w, grid, _ = witness("fig1-accept-everything")
    r = check_witness(o, w, grid)
    assert not r.over_budget
    assert r.wrong and all(not ln.member for ln in r.wrong)


def test_sqrt_wire_witness_members():
    o, w, grid, _ = witness("sqrt-wire-fo")
    r = check_witness(o, w, [(9, 0), (0, 0)], fuzz=5)
    # gate 9 is an Or with input 3 as its only predecessor; at n = 0 there is no edge
    assert sum(ln.member for ln in r.lines if ln.n == 9) == 2
    assert sum(ln.member for ln in r.lines if ln.n == 0) == 1
    assert r.ok


def test_report_format():
    line = WitnessLine(5, 2, "0101", True, False, 12, 10)
    assert line.text() == "(5,2) 0101 false-reject 12 10"
    assert line.wrong and line.over_budget
    assert WitnessLine(0, 0, "", False, False).text() == "(0,0) eps reject - -"
    o, w, _, _ = witness("const1-bd")
    r = check_witness(o, w, [(2, 1)], fuzz=3)
    lines = r.text().splitlines()
    assert lines[-1].endswith(": ok")
    assert all(len(ln.split()) == 5 for ln in lines[:-1])


def test_reports_are_reproducible():
    o, w, grid, _ = witness("const0-bd")
    a = check_witness(o, w, grid[:8], seed=7).text()
    assert a == check_witness(o, w, grid[:8], seed=7).text()
    assert a != check_witness(o, w, grid[:8], seed=8).text()


def test_fuzzed_words_are_non_words():
    import random
    from paracirc.conlang import decide_direct, enumerate_direct_words
    o = oracle("fig1-equality")
    members = [x.to_bits() for x in enumerate_direct_words(o, 5, 2)]
    out = fuzz_non_words(members, lambda x: decide_direct(o, x), 50, random.Random(0))
    assert len(out) == 50 and len(set(out)) == 50
    assert not any(decide_direct(o, x) for x in out)


def test_budget():
    b = Budget(3, (0, 1, 1, 2, 2, 2, 2, 2, 9))
    assert b(10, 0) == 30 and b(10, 8) == 57
    assert Budget(2, scale="log")(1024, 0) == 22
    with pytest.raises(ValueError):
        b(10, 9)
    with pytest.raises(ValueError):
        Budget(1, (2, 1))
    with pytest.raises(ValueError):
        Budget(-1)
    with pytest.raises(ValueError):
        UniformityWitness("machine-BD", None)
    with pytest.raises(ValueError):
        UniformityWitness("fo-X", None)
    with pytest.raises(KeyError):
        witness("nope")
