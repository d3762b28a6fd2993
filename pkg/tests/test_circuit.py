import itertools

import pytest
from hypothesis import given, strategies as st

from paracirc.circuit import (
    Circuit, CircuitError, Gate, GateType, InputLengthMismatch, NumberingBound, evaluate,
    from_json, make_circuit, predicate_table, stats, to_dot, to_json, truth_table,
    validate_numbering,
)
from paracirc.conlang import materialize
from paracirc.families import fig1_predicate, oracle

A, O, N = GateType.AND, GateType.OR, GateType.NOT


@pytest.fixture
def fig1():
    return materialize(oracle("fig1-equality"), 5, 2)


def wire():
    return make_circuit(1, [1], {1: (O, [0])})


def test_wire():
    c = wire()
    assert evaluate(c, "1") == "1"
    assert evaluate(c, "0") == "0"
    s = stats(c)
    assert (s.size, s.depth) == (2, 1)


def test_fig1_eval(fig1):
    assert evaluate(fig1, "11011") == "1"
    assert evaluate(fig1, "10011") == "0"
    s = stats(fig1)
    assert (s.size, s.depth) == (14, 4)
    assert s.levels[9] == 2 and s.levels[12] == 1 and s.levels[6] == 3


def test_fig1_truth_table(fig1):
    assert truth_table(fig1)[0] == predicate_table(5, fig1_predicate)


def test_input_length(fig1):
    with pytest.raises(InputLengthMismatch):
        evaluate(fig1, "101")


def test_empty_fanin():
    c = make_circuit(0, [0, 1], {0: (A, []), 1: (O, [])})
    assert evaluate(c, "") == "10"
    assert stats(c).depth == 0


def test_const_only():
    c = Circuit(0, (0,), {0: Gate(GateType.CONST1)})
    assert evaluate(c, "") == "1"
    assert validate_numbering(c, NumberingBound(0, 0, 1)) == []


def test_numbering(fig1):
    assert validate_numbering(fig1, NumberingBound(5, 2, 16)) == []
    assert validate_numbering(fig1, NumberingBound(5, 2, 10))
    moved = dict(fig1.gates)
    moved[14] = moved.pop(5)
    bad = Circuit(5, (14,), moved)
    problems = validate_numbering(bad, NumberingBound(5, 2, 16))
    assert any("outputs must start at n" in p for p in problems)


def test_structural_errors():
    with pytest.raises(CircuitError):
        make_circuit(1, [1], {1: (O, [2]), 2: (O, [1])})
    with pytest.raises(CircuitError):
        make_circuit(2, [2], {2: (N, [0, 1])})
    with pytest.raises(CircuitError):
        make_circuit(1, [1], {1: (O, [7])})


@pytest.mark.parametrize("m", [1, 2, 3])
def test_de_morgan(m):
    spec = {m + 1 + i: (N, [i]) for i in range(m)}
    spec[m] = (N, [3 * m + 1])
    spec[3 * m + 1] = (A, list(range(m)))
    spec[3 * m + 2] = (O, [m + 1 + i for i in range(m)])
    c = make_circuit(m, [m, 3 * m + 2], spec)
    for x in itertools.product("01", repeat=m):
        y = evaluate(c, "".join(x))
        assert y[0] == y[1]


def test_levels_bounded(fig1):
    s = stats(fig1)
    assert max(s.levels.values()) <= s.depth
    assert s.depth == max(s.levels[o] for o in fig1.outputs)


@given(st.integers(min_value=0, max_value=31))
def test_bit_parallel_matches_scalar(a):
    c = materialize(oracle("fig1-equality"), 5, 2)
    x = "".join("1" if (a >> i) & 1 else "0" for i in range(5))
    assert (truth_table(c)[0] >> a) & 1 == int(evaluate(c, x))


def test_json_round_trip(fig1):
    back = from_json(to_json(fig1))
    assert back.gates == fig1.gates and back.outputs == fig1.outputs


def test_dot(fig1):
    text = to_dot(fig1)
    assert text.startswith("digraph")
    assert 'g9 -> g6 [label="1"]' in text


def test_structured_ids():
    gates = {(0, 0): Gate(GateType.INPUT), (0, 1): Gate(O, ((0, 0),))}
    c = Circuit(1, ((0, 1),), gates, inputs=((0, 0),))
    assert evaluate(c, "1") == "1"
    assert '"structured_id"' in to_json(c)
