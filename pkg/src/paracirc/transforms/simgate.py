"""Layered simulation of a bounded-depth family by a regular grid of simgates.

Layer m (1..d) holds simgates ``<m, q>`` for q < N.  Simgate ``<m, q>``
imitates gate q of ``C_{n,k}`` on the outputs of layer m-1 and on the inputs;
after ``level(q)`` layers it computes q exactly.  Gate ids inside a simgate:

    <m,q,0>  Or(1, 2, 3)             result
    <m,q,1>  And(8, 4)               Or branch
    <m,q,2>  And(5, 6)               Not branch, 5 = Not(8)
    <m,q,3>  And(9, 7)               And branch
    <m,q,4>, <m,q,6>, <m,q,7>        constants: q is Or / Not / And
    <m,q,8>  Or over selected predecessors
    <m,q,9>  And over selected predecessors
    <m,q,10,i> = And(x_i, 14),  <m,q,11,i> = Or(x_i, 16),  16 = Not(14)
    <m,q,12,p> = And(<m-1,p,0>, 15),  <m,q,13,p> = Or(<m-1,p,0>, 17),  17 = Not(15)
    <m,q,14,i>  constant: input i is a predecessor of q
    <m,q,15,p>  constant: p is a non-input predecessor of q

Unselected And-branch arguments are forced to 1 by the complement gates 16
and 17.  Layer 1 reads the constant ``V0 = <0,0>`` where it would read layer 0.
``P_q = <d+1,q,0> = And(<d,q,0>, <d+1,q,1>)`` with ``<d+1,q,1>`` the constant
"q is the output gate", and the output ``n`` is ``Or(P_0, ..., P_{N-1})``.

In the extended layout ``N = 2^L - 1`` and gates 8/9 list their arguments as
previous-layer selectors at positions ``0..N-1``, a constant filler at
position ``N`` (V0 for gate 8, V1 for gate 9) and input selectors at
positions ``N+1+i``.  The default layout lists input selectors first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..circuit import Circuit, Gate, GateType
from ..conlang import AND_CODE, NOT_CODE, OR_CODE, DEFAULT_CAP, BoundExceeded, FamilyOracle, decide_slice

C0, C1 = Gate(GateType.CONST0), Gate(GateType.CONST1)
V0, V1 = (0, 0), (0, 1)


class LayoutTooSmall(ValueError):
    pass


class QueryMode(enum.Enum):
    ORACLE_CONSTANTS = "oracle-constants"
    SUBSTITUTED_DECIDER = "substituted-decider"


@dataclass(frozen=True)
class SimgateLayout:
    d: int
    N: int
    L: int | None = None  # set in the extended layout, where N = 2^L - 1
    mode: QueryMode = QueryMode.ORACLE_CONSTANTS

    @property
    def extended(self) -> bool:
        return self.L is not None

    def check(self, C: FamilyOracle, n: int, k: int) -> None:
        if self.extended and self.N != (1 << self.L) - 1:
            raise LayoutTooSmall(f"extended layout needs N = 2^L - 1, got N={self.N}, L={self.L}")
        bound = C.numbering_bound(n, k)
        if self.N < bound:
            raise LayoutTooSmall(f"{self.N} simgates per layer, family numbers gates up to {bound - 1}")
        if self.d < 1:
            raise LayoutTooSmall("at least one layer is needed")


def default_layout(C: FamilyOracle, n: int, k: int) -> SimgateLayout:
    return SimgateLayout(d=max(1, C.depth_bound(k)), N=C.numbering_bound(n, k))


def extended_layout(C: FamilyOracle, n: int, k: int, L: int | None = None) -> SimgateLayout:
    if L is None:
        L = max(1, C.numbering_bound(n, k).bit_length())
    return SimgateLayout(d=max(1, C.depth_bound(k)), N=(1 << L) - 1, L=L)


@dataclass(frozen=True)
class GateQueries:
    """Answers to the connection-language questions a simgate asks about q."""

    is_or: bool
    is_not: bool
    is_and: bool
    input_preds: frozenset
    gate_preds: frozenset
    is_output: bool


def query_gate(C: FamilyOracle, q: int, n: int, k: int, N: int) -> GateQueries:
    is_or = decide_slice(C, q, OR_CODE, "", n, k)
    is_not = decide_slice(C, q, NOT_CODE, "", n, k)
    is_and = decide_slice(C, q, AND_CODE, "", n, k)
    preds = set()
    if is_or or is_not or is_and:
        # any predecessor position is below N + n since gates have at most
        # N + n possible predecessors without repetition; a repeated
        # predecessor adds nothing to an And or an Or
        p = 0
        while p <= N + n:
            a = C.pth_input(q, p, n, k)
            if a is None:
                break
            preds.add(a)
            p += 1
    ins = frozenset(a for a in preds if a < n)
    outs = frozenset(a for a in preds if a >= n)
    m = C.output_count(n, k)
    if m != 1:
        raise ValueError("the simgate construction handles single-output families")
    return GateQueries(is_or, is_not, is_and, ins, outs, q == n)


def build_simgate_family(C: FamilyOracle, n: int, k: int, layout: SimgateLayout | None = None,
                         cap: int = 1 << 20) -> Circuit:
    layout = layout or default_layout(C, n, k)
    layout.check(C, n, k)
    if layout.mode is not QueryMode.ORACLE_CONSTANTS:
        raise NotImplementedError("only hard-wired query answers are supported")
    d, N = layout.d, layout.N
    est = d * N * (10 + 4 * n + 4 * N) + 2 * N + n + 3
    if est > cap:
        raise BoundExceeded(f"about {est} gates exceed cap {cap}")
    queries = [query_gate(C, q, n, k, N) for q in range(N)]
    const = {True: C1, False: C0}
    gates = {i: Gate(GateType.INPUT) for i in range(n)}
    gates[V0] = C0
    gates[V1] = C1
    for m in range(1, d + 1):
        for q in range(N):
            Q = queries[q]
            s = (m, q)
            g = lambda j, *rest: s + (j,) + rest  # noqa: E731
            gates[g(0)] = Gate(GateType.OR, (g(1), g(2), g(3)))
            gates[g(1)] = Gate(GateType.AND, (g(8), g(4)))
            gates[g(2)] = Gate(GateType.AND, (g(5), g(6)))
            gates[g(3)] = Gate(GateType.AND, (g(9), g(7)))
            gates[g(4)] = const[Q.is_or]
            gates[g(5)] = Gate(GateType.NOT, (g(8),))
            gates[g(6)] = const[Q.is_not]
            gates[g(7)] = const[Q.is_and]
            for i in range(n):
                gates[g(10, i)] = Gate(GateType.AND, (i, g(14, i)))
                gates[g(11, i)] = Gate(GateType.OR, (i, g(16, i)))
                gates[g(14, i)] = const[i in Q.input_preds]
                gates[g(16, i)] = Gate(GateType.NOT, (g(14, i),))
            for p in range(N):
                prev = V0 if m == 1 else (m - 1, p, 0)
                gates[g(12, p)] = Gate(GateType.AND, (prev, g(15, p)))
                gates[g(13, p)] = Gate(GateType.OR, (prev, g(17, p)))
                gates[g(15, p)] = const[p in Q.gate_preds]
                gates[g(17, p)] = Gate(GateType.NOT, (g(15, p),))
            ins_or = tuple(g(10, i) for i in range(n))
            ins_and = tuple(g(11, i) for i in range(n))
            prev_or = tuple(g(12, p) for p in range(N))
            prev_and = tuple(g(13, p) for p in range(N))
            if layout.extended:
                gates[g(8)] = Gate(GateType.OR, prev_or + (V0,) + ins_or)
                gates[g(9)] = Gate(GateType.AND, prev_and + (V1,) + ins_and)
            else:
                gates[g(8)] = Gate(GateType.OR, ins_or + prev_or)
                gates[g(9)] = Gate(GateType.AND, ins_and + prev_and)
    top = d + 1
    for q in range(N):
        gates[(top, q, 0)] = Gate(GateType.AND, ((d, q, 0), (top, q, 1)))
        gates[(top, q, 1)] = const[queries[q].is_output]
    gates[n] = Gate(GateType.OR, tuple((top, q, 0) for q in range(N)))
    return Circuit(n, (n,), gates)


def simgate_size(layout: SimgateLayout, n: int) -> int:
    d, N = layout.d, layout.N
    return d * N * (10 + 4 * n + 4 * N) + 2 * N + n + 3
