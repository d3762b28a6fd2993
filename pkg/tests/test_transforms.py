import random

import pytest
from hypothesis import given, settings, strategies as st

from paracirc.circuit import Circuit, Gate, GateType, gate_tables, longest_path, stats, truth_table
from paracirc.codec import encode_list, encode_numerals, id_to_number, nat_to_bits
from paracirc.conlang import (
    BoundExceeded, CircuitOracle, ConnectionWord, decide_binary_direct, decide_extended_naive,
    enumerate_paths, materialize, path_word, path_words, words_of_circuit,
)
from paracirc.families import PRIMARY_FAMILIES, builtin, oracle
from paracirc.transforms.layered import build_layered_E, ceil_log2
from paracirc.transforms.simgate import (
    LayoutTooSmall, QueryMode, SimgateLayout, build_simgate_family, default_layout,
    extended_layout, simgate_size,
)
from paracirc.transforms.substitution import (
    PAIR_FLOOR, PlanViolation, SubstitutionDecider, SubstitutionPlan, builtin_cases,
    canonical_renumber, empty_plan, interpret_table, plan_by_gates, plan_by_type, relabel_pairs,
    substitute, table_equal,
)

CASES = builtin_cases()
FIG1 = oracle("fig1-equality")


def slices(n_max=6, k_max=2):
    return [(n, k) for n in range(n_max + 1) for k in range(k_max + 1)]


def kappa_slices(name, n_max):
    problem, _ = builtin(name)
    return [(n, problem.kappa("0" * n)) for n in range(n_max + 1)]


# substitution -------------------------------------------------------------------

def test_pair_floor():
    assert PAIR_FLOOR == 858
    assert id_to_number((0, 0)) == 858


@pytest.mark.parametrize("case", sorted(CASES))
def test_substitution_computes_interpretation(case):
    A, B, plan = CASES[case]
    S = substitute(A, B, plan)
    for n, k in slices():
        c = materialize(S, n, k)
        assert truth_table(c) == interpret_table(A, B, plan, n, k), (n, k)


@pytest.mark.parametrize("case", sorted(CASES))
def test_decider_accepts_every_word(case):
    A, B, plan = CASES[case]
    S = substitute(A, B, plan)
    dec = SubstitutionDecider(A, B, plan)
    for n, k in slices(5, 2):
        c = materialize(S, n, k)
        for w in words_of_circuit(c, n, k):
            assert dec.decide_bd(w.to_binary_bits()), (n, k, str(w))


@pytest.mark.parametrize("case", sorted(CASES))
def test_decider_rejects_perturbed_words(case):
    A, B, plan = CASES[case]
    S = substitute(A, B, plan)
    dec = SubstitutionDecider(A, B, plan)
    rng = random.Random(7)
    for n, k in slices(5, 2):
        c = materialize(S, n, k)
        co = CircuitOracle(c, n, k)
        numbers = sorted(co.gate_numbers(n, k))
        words = sorted(words_of_circuit(c, n, k))
        for _ in range(150):
            w = rng.choice(words)
            G = rng.choice(numbers + [rng.randrange(2 * numbers[-1] + 2)])
            a = rng.choice(numbers + [0, 1, 2, rng.randrange(2 * numbers[-1] + 2)])
            p = rng.choice([w.p, "", nat_to_bits(rng.randrange(4)), "01"])
            bits = ConnectionWord(G, a, p, n, k).to_binary_bits()
            assert dec.decide_bd(bits) == decide_binary_direct(co, bits), (n, k, G, a, p)


def test_decider_rejects_garbage():
    A, B, plan = CASES["fig1-and"]
    dec = SubstitutionDecider(A, B, plan)
    for w in ["", "0", "01", "1" * 30, encode_list(["1", "0", "", "0101", "10"])]:
        assert not dec.decide_bd(w)


def test_substituted_numbering():
    A, B, plan = CASES["fig1-and"]
    c = materialize(substitute(A, B, plan), 5, 2)
    assert all(g.type is GateType.INPUT for g in (c.gates[i] for i in range(5)))
    labels = set(c.labels.values())
    # unmarked Or gates are wrapped as <0, G>, marked And gates expand to <G, G'>
    assert (0, 6) in labels
    assert (10, 0) in labels and (10, 2) in labels and (10, 3) in labels


def test_marking_an_output_is_rejected():
    plan = plan_by_gates(FIG1, {(5, 2): {5}})
    with pytest.raises(PlanViolation):
        materialize(substitute(FIG1, oracle("and-gate"), plan), 5, 2)


def test_wrong_fanin_is_rejected():
    plan = SubstitutionPlan(plan_by_type(FIG1, {GateType.AND}).marker, lambda G, n, k: 3)
    with pytest.raises(PlanViolation):
        materialize(substitute(FIG1, oracle("and-gate"), plan), 5, 2)


def test_replacement_output_needs_fanin_one():
    plan = plan_by_type(FIG1, {GateType.AND})
    with pytest.raises(PlanViolation):
        materialize(substitute(FIG1, FIG1, plan), 5, 2)


def test_flat_numbers_must_stay_below_pairs():
    S = substitute(oracle("identity-wire"), oracle("and-gate"), empty_plan(oracle("identity-wire")))
    materialize(S, PAIR_FLOOR - 1, 0)
    with pytest.raises(BoundExceeded):
        materialize(S, PAIR_FLOOR, 0)


def test_empty_plan_is_identity_up_to_wrapping():
    S = substitute(FIG1, oracle("and-gate"), empty_plan(FIG1))
    for n, k in slices(6, 2):
        orig = materialize(FIG1, n, k)
        assert canonical_renumber(materialize(S, n, k)).gates == orig.gates


def test_renumber_restores_wrapped_fig1():
    c = materialize(FIG1, 5, 2)
    wrapped = relabel_pairs(c)
    assert (0, 0) in wrapped.gates
    back = canonical_renumber(wrapped)
    assert back.gates == c.gates
    assert back.outputs == c.outputs
    assert table_equal(back, c)


def test_renumber_zero_inputs():
    c = Circuit(0, ((0, 7),), {(0, 7): Gate(GateType.CONST1)})
    r = canonical_renumber(c)
    assert r.outputs == (0,)
    assert r.gates == {0: Gate(GateType.CONST1)}
    assert r.labels[0] == (0, 7)


# simgate ------------------------------------------------------------------------

@pytest.mark.parametrize("name", PRIMARY_FAMILIES)
@pytest.mark.parametrize("extended", [False, True])
def test_simgate_computes_family(name, extended):
    C = oracle(name)
    for n, k in kappa_slices(name, 6):
        orig = materialize(C, n, k)
        layout = extended_layout(C, n, k) if extended else default_layout(C, n, k)
        D = build_simgate_family(C, n, k, layout)
        assert truth_table(D) == truth_table(orig), (n, k)
        assert D.size == simgate_size(layout, n)
        assert stats(D).depth <= 5 * layout.d + 2


@pytest.mark.parametrize("name", PRIMARY_FAMILIES)
def test_simgates_converge_by_level(name):
    C = oracle(name)
    for n, k in kappa_slices(name, 5):
        orig = materialize(C, n, k)
        lv = stats(orig).levels
        layout = default_layout(C, n, k)
        D = build_simgate_family(C, n, k, layout)
        want = gate_tables(orig)
        got = gate_tables(D)
        for q, g in orig.gates.items():
            if g.type is GateType.INPUT:
                continue
            for m in range(max(1, lv[q]), layout.d + 1):
                assert got[(m, q, 0)] == want[q], (n, k, q, m)


def test_simgate_fig1_depth():
    C = FIG1
    layout = default_layout(C, 5, 2)
    assert (layout.d, layout.N) == (4, 14)
    assert stats(build_simgate_family(C, 5, 2, layout)).depth <= 22


def test_layout_too_small():
    with pytest.raises(LayoutTooSmall):
        build_simgate_family(FIG1, 5, 2, SimgateLayout(d=4, N=13))
    with pytest.raises(LayoutTooSmall):
        build_simgate_family(FIG1, 5, 2, SimgateLayout(d=4, N=14, L=4))
    with pytest.raises(LayoutTooSmall):
        build_simgate_family(FIG1, 5, 2, SimgateLayout(d=0, N=14))


def test_simgate_cap():
    with pytest.raises(BoundExceeded):
        build_simgate_family(FIG1, 5, 2, default_layout(FIG1, 5, 2), cap=100)


def test_substituted_decider_mode_is_not_built():
    layout = SimgateLayout(d=4, N=14, mode=QueryMode.SUBSTITUTED_DECIDER)
    with pytest.raises(NotImplementedError):
        build_simgate_family(FIG1, 5, 2, layout)


# layered paths --------------------------------------------------------------------

@pytest.fixture(scope="module")
def layered41():
    D, tracer = build_layered_E(FIG1, 4, 1)
    return D, tracer, CircuitOracle(D, 4, 1)


def test_ceil_log2():
    assert [ceil_log2(n) for n in range(1, 10)] == [0, 1, 2, 2, 3, 3, 3, 3, 4]


def test_path_words_order(layered41):
    D, _, _ = layered41
    ref = [path_word(G, a, s, 4, 1).to_bits() for G, s, a in enumerate_paths(D, 3)]
    assert list(path_words(D, 3, 1)) == ref


def test_tracer_matches_naive_on_short_paths(layered41):
    D, tracer, co = layered41
    n = 0
    for w in path_words(D, 4, 1):
        assert tracer(w) and decide_extended_naive(co, w)
        n += 1
    assert n > 10000


def test_tracer_fuzz(layered41):
    D, tracer, co = layered41
    rng = random.Random(11)
    numbers = sorted(co.gate_numbers(4, 1, cap=1 << 20))
    rejected = 0
    for _ in range(1000):
        G = rng.choice(numbers)
        a = rng.choice(numbers)
        steps = [rng.choice([0, 1, 2, 3, 7, 8, 9, 11, 12, 40]) for _ in range(rng.randint(1, 7))]
        w = path_word(G, a, steps, 4, 1).to_bits()
        got = tracer(w)
        assert got == decide_extended_naive(co, w), (G, a, steps)
        rejected += not got
    assert rejected > 900


def test_tracer_rejects_malformed(layered41):
    _, tracer, _ = layered41
    G = id_to_number((1, 0, 0))
    a = id_to_number((1, 0, 1))
    good = path_word(G, a, [0], 4, 1)
    assert tracer(good.to_bits())
    bad = [
        "", "0101", good.to_bits()[:-1], good.to_bits() + "0",
        ConnectionWord(G, a, "", 4, 1).to_bits(),
        ConnectionWord(G, a, "0", 4, 1).to_bits(),
        ConnectionWord(G, a, encode_list(["00"]), 4, 1).to_bits(),
        ConnectionWord(G, a, encode_list([""]), 4, 1).to_bits(),
        ConnectionWord(G, a, good.p, 5, 1).to_bits(),
        path_word(G + 1, a, [0], 4, 1).to_bits(),
    ]
    for w in bad:
        assert not tracer(w), w


def test_one_step_inside_a_simgate(layered41):
    _, tracer, _ = layered41
    for q in range(7):
        G = id_to_number((1, q, 0))
        assert tracer(path_word(G, id_to_number((1, q, 1)), [0], 4, 1).to_bits())
        assert not tracer(path_word(G, id_to_number((1, q, 2)), [0], 4, 1).to_bits())


def test_step_length_boundary(layered41):
    _, tracer, _ = layered41
    cap = tracer.max_step_len
    assert cap == 3 + 2 + 1
    G = id_to_number((2, 0, 8))
    a = 0
    at_cap = tracer.trace(ConnectionWord(G, a, encode_numerals([1 << (cap - 1)]), 4, 1).to_bits())
    over = tracer.trace(ConnectionWord(G, a, encode_numerals([1 << cap]), 4, 1).to_bits())
    assert not at_cap.accepted and "exceeds" not in at_cap.reason
    assert not over.accepted and "exceeds" in over.reason


def test_step_count_limit(layered41):
    D, tracer, _ = layered41
    assert tracer.max_steps == longest_path(D)
    w = path_word(4, 0, [0] * (tracer.max_steps + 1), 4, 1).to_bits()
    assert "more than" in tracer.trace(w).reason


def test_input_branch_and_filler(layered41):
    _, tracer, co = layered41
    N = tracer.N
    G = id_to_number((1, 2, 8))
    # N+1+i leads to input selector i, then on to input i
    w = path_word(G, 1, [N + 2, 0], 4, 1).to_bits()
    assert tracer(w) and decide_extended_naive(co, w)
    # position N is the constant filler
    w = path_word(G, id_to_number((0, 0)), [N], 4, 1).to_bits()
    assert tracer(w) and decide_extended_naive(co, w)
    w = path_word(id_to_number((1, 2, 9)), id_to_number((0, 1)), [N], 4, 1).to_bits()
    assert tracer(w) and decide_extended_naive(co, w)


def test_tracer_verbose_log(layered41):
    _, tracer, _ = layered41
    G = id_to_number((1, 0, 0))
    r = tracer.trace(path_word(G, id_to_number((1, 0, 8)), [0, 0], 4, 1).to_bits(), verbose=True)
    assert r.accepted
    assert r.log[0].startswith("start") and len(r.log) == 3


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=1, max_size=6), st.integers(0, 1 << 16))
def test_tracer_agrees_on_random_paths(steps, seed):
    D, tracer = _layered_small()
    co = _layered_small_oracle()
    rng = random.Random(seed)
    numbers = sorted(co.gate_numbers(2, 1, cap=1 << 20))
    G, a = rng.choice(numbers), rng.choice(numbers)
    w = path_word(G, a, steps, 2, 1).to_bits()
    assert tracer(w) == decide_extended_naive(co, w)


_SMALL = {}


def _layered_small():
    if "D" not in _SMALL:
        _SMALL["D"], _SMALL["tracer"] = build_layered_E(FIG1, 2, 1)
    return _SMALL["D"], _SMALL["tracer"]


def _layered_small_oracle():
    if "co" not in _SMALL:
        _SMALL["co"] = CircuitOracle(_layered_small()[0], 2, 1)
    return _SMALL["co"]
