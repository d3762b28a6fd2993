import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from paracirc.circuit import predicate_table, stats, truth_table
from paracirc.machines import (
    BOT, CapExceeded, MachineError, Query, Verdict, build_machine, compile_ratm, count_binary,
    count_binary_steps, dtm, format_machine, machine_text, parse_machine, ratm, ratm_names,
    simulate_dtm, simulate_ratm,
)

# c * M + c' envelope for counting up from 0, fitted over M in 1..2^14
COUNT_C, COUNT_C0 = 8, 0


def test_accept_now():
    r = simulate_dtm(dtm("accept-now"), "101", 10)
    assert r.verdict is Verdict.ACCEPT and r.steps == 1
    assert r.query_log == ()


def test_first_bit():
    m = dtm("first-bit")
    assert simulate_dtm(m, "011", 10).verdict is Verdict.REJECT
    assert simulate_dtm(m, "1", 10).verdict is Verdict.ACCEPT
    assert simulate_dtm(m, "", 10).verdict is Verdict.REJECT


def test_cap_zero_times_out():
    for m in (dtm("accept-now"), dtm("first-bit")):
        assert simulate_dtm(m, "1", 0).verdict is Verdict.TIMEOUT
    assert simulate_ratm(ratm("always-accept"), "", 0).verdict is Verdict.TIMEOUT
    assert simulate_ratm(ratm("loop"), "1", 50).steps == 50


def test_query_bit0():
    m = ratm("query-bit0")
    r = simulate_ratm(m, "1", 5)
    assert r.accepted and r.query_log == (Query(0, "1"),)
    r = simulate_ratm(m, "", 5)
    assert r.verdict is Verdict.REJECT and r.query_log == (Query(0, BOT),)


def test_garbage_address():
    r = simulate_ratm(ratm("garbage-address"), "0101", 5)
    assert r.accepted and r.query_log == (Query(None, BOT),)


def test_adaptive():
    m = ratm("adaptive-select")
    for x in itertools.product("01", repeat=3):
        x = "".join(x)
        expected = x[1] == "1" if x[0] == "1" else x[2] == "1"
        assert simulate_ratm(m, x, 10).accepted == expected


def test_query_tape_persists():
    # two queries without touching the query tape see the same bit
    m = parse_machine("""
tapes 1
input none
start s
accept acc
reject rej
query q 0
s * * -> q 1 S
q * 0 -> p * S
q * 1 -> p * S
p * * -> q * S
""")
    r = simulate_ratm(m, "01", 4)
    assert [q.response for q in r.query_log] == ["1", "1"]


def test_trace():
    r = simulate_ratm(ratm("query-bit0"), "1", 5, trace=True)
    assert r.trace[0].startswith("1 q") and "query 0 -> 1" in r.trace[0]


def test_format_round_trip():
    for name in ratm_names():
        m = ratm(name)
        again = parse_machine(format_machine(m))
        assert dict(again.delta) == dict(m.delta)
    assert parse_machine(machine_text("first-bit")).delta == dtm("first-bit").delta


def test_machine_errors():
    with pytest.raises(MachineError):
        build_machine("x", 1, "s", "a", "r", [("s", ["0"], "a", ["1"], ["S"])])
    with pytest.raises(MachineError):
        build_machine("x", 1, "s", "a", "r", [("a", ["0"], "s", ["0"], ["S"])])
    with pytest.raises(MachineError):
        build_machine("x", 1, "s", "a", "r", [("s", ["*"], "a", ["*"], ["S"]),
                                             ("s", ["*"], "r", ["*"], ["S"])])
    with pytest.raises(MachineError):
        parse_machine("tapes 1\nstart s\n")


def test_specific_rule_wins():
    m = build_machine("x", 1, "s", "a", "r", [("s", ["*"], "r", ["*"], ["S"]),
                                             ("s", ["1"], "a", ["1"], ["S"])])
    assert simulate_dtm(m, "1", 3).accepted
    assert not simulate_dtm(m, "0", 3).accepted


@pytest.mark.parametrize("name", ratm_names())
def test_compiler_sound(name):
    m = ratm(name)
    for t in range(5):
        for n in range(6):
            c = compile_ratm(m, t, n)
            expected = predicate_table(n, lambda x: simulate_ratm(m, x, t).accepted)
            assert truth_table(c)[0] == expected, (t, n)
            assert stats(c).depth <= 3


def test_compiler_examples():
    c = compile_ratm(ratm("always-accept"), 1, 1)
    assert truth_table(c)[0] == 0b11
    c = compile_ratm(ratm("query-bit0"), 3, 2)
    assert truth_table(c)[0] == predicate_table(2, lambda x: x[0] == "1")
    c = compile_ratm(ratm("query-bit0"), 3, 0)
    assert truth_table(c)[0] == 0


def test_compiler_cap():
    with pytest.raises(CapExceeded):
        compile_ratm(ratm("query-bit0"), 7, 2)


def test_counting_examples():
    assert count_binary_steps(0, 0) == 0
    assert count_binary_steps(0, 8) <= COUNT_C * 8 + COUNT_C0
    # a single increment of 2^10 - 1 carries through all ten digits
    one = count_binary(2 ** 10 - 1, 1)
    assert one.value == 2 ** 10 and one.increments == 1
    assert 10 <= one.steps <= 3 * 10 + 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 20), st.integers(0, 300))
def test_counting_value(N, M):
    r = count_binary(N, M)
    assert r.value == N + M and r.increments == M


def test_counting_fit():
    for M in range(1, 2 ** 12):
        assert count_binary_steps(0, M) <= COUNT_C * M + COUNT_C0


@pytest.mark.parametrize("code,family", [(0, "const1"), (1, "const0")])
def test_constant_binary_connection_machine(code, family):
    from paracirc.conlang import ConnectionWord, decide_binary_direct
    from paracirc.families import oracle
    from paracirc.machines.library import const_bd_machine

    m, o = const_bd_machine(code), oracle(family)
    for length in range(15):
        for bits in itertools.product("01", repeat=length):
            w = "".join(bits)
            assert simulate_dtm(m, w, 10_000).accepted == decide_binary_direct(o, w), w
    for n in (0, 1, 7, 100, 1023):
        for k in (0, 3, 8):
            w = ConnectionWord(n, code, "", n, k).to_binary_bits()
            r = simulate_dtm(m, w, 100_000)
            assert r.accepted and r.steps <= 4 * len(w)
