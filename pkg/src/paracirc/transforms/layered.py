"""The path-addressable simgate layout and a tracer for its extended language.

The tracer decides whether a path p leads from gate G to gate a without ever
looking at the circuit.  It relies only on the regular shape of the layout:
with ``N = 2^L - 1`` simgates per layer, a step out of gates 8/9 is a
previous-layer selector exactly when its length is at most L (and it is not
the filler position N), and an input selector when it is longer.  Step values
are read only when they must be: for very short steps inside a simgate, for
length-L steps out of gates 8/9 (to spot N), and for the single long step
leading to an input branch.  Simgate indices are remembered by the position
of the step that holds them and looked up once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..circuit import longest_path
from ..codec import id_to_number, item_spans, MalformedList, number_to_tuple
from ..conlang import FamilyOracle, parse_word
from .simgate import SimgateLayout, build_simgate_family, extended_layout

# simgate-internal moves for gates with at most three arguments: H -> {step: H'}
_SHORT = {
    0: {0: 1, 1: 2, 2: 3},
    1: {0: 8, 1: 4},
    2: {0: 5, 1: 6},
    3: {0: 9, 1: 7},
    5: {0: 8},
}
_SELECT_FROM = {10: {0: "input", 1: 14}, 11: {0: "input", 1: 16}, 16: {0: 14}}
_PREV_FROM = {12: 15, 13: 17}
_CONSTANT_H = {4, 6, 7, 14, 15}


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


@dataclass
class TraceResult:
    accepted: bool
    reason: str
    log: list = field(default_factory=list)

    def __bool__(self):
        return self.accepted


@dataclass
class _State:
    kind: str  # input, output, v0, v1, sim, prop, propc
    m: int = 0
    aq: object = None   # where the simgate index is stored: ("G",) or a step position
    aq2: object = None  # where the candidate previous-layer index is stored
    H: int = 0
    v: int | None = None  # input index for the input selector gates

    def show(self):
        return f"kind={self.kind} m={self.m} a_q={self.aq} a_q'={self.aq2} H={self.H}"


class PathTracer:
    def __init__(self, n: int, k: int, layout: SimgateLayout, max_steps: int):
        if not layout.extended:
            raise ValueError("the tracer needs the extended layout")
        self.n, self.k = n, k
        self.d, self.N, self.L = layout.d, layout.N, layout.L
        self.max_steps = max_steps
        self.max_step_len = self.L + ceil_log2(n) + 1

    # structure of gate names --------------------------------------------

    def locate(self, num: int):
        """Decode a gate number into ``(kind, m, q, H, v)``, or None."""
        n, d, N = self.n, self.d, self.N
        if 0 <= num < n:
            return ("input", 0, None, 0, num)
        if num == n:
            return ("output", 0, None, 0, None)
        t = number_to_tuple(num)
        if t is None:
            return None
        if t == (0, 0):
            return ("v0", 0, None, 0, None)
        if t == (0, 1):
            return ("v1", 0, None, 0, None)
        if len(t) == 3:
            m, q, H = t
            if q >= N:
                return None
            if 1 <= m <= d and H <= 9:
                return ("sim", m, q, H, None)
            if m == d + 1 and H in (0, 1):
                return ("prop" if H == 0 else "propc", m, q, H, None)
            return None
        if len(t) == 4:
            m, q, H, v = t
            if not (1 <= m <= d and q < N):
                return None
            if H in (10, 11, 14, 16) and v < n:
                return ("sim", m, q, H, v)
            if H in (12, 13, 15, 17) and v < N:
                return ("sim", m, q, H, v)
        return None

    # tracing ---------------------------------------------------------------

    def trace(self, w: str, verbose: bool = False) -> TraceResult:
        parts = parse_word(w)
        if parts is None:
            return TraceResult(False, "not a word <G, a, p, z, z'>")
        G, a, p, z, z2 = parts
        if (len(z), len(z2)) != (self.n, self.k):
            return TraceResult(False, "wrong slice")
        start = self.locate(G)
        if start is None:
            return TraceResult(False, "G is not a gate")
        if self.locate(a) is None:
            return TraceResult(False, "a is not a gate")
        if p == "":
            return TraceResult(False, "type words are not paths")
        try:
            spans = item_spans(p)
        except MalformedList:
            return TraceResult(False, "p is not a list")
        # lengths first: every step is examined by length before any value
        if len(spans) > self.max_steps:
            return TraceResult(False, f"more than {self.max_steps} steps")
        for s, ln in spans:
            if ln > self.max_step_len:
                return TraceResult(False, f"step of length {ln} exceeds {self.max_step_len}")
            if ln == 0 or (ln > 1 and p[s] == "0"):
                return TraceResult(False, "step is not a canonical numeral")

        def value(j):
            s, ln = spans[j]
            return int(p[s:s + ln], 2)

        kind, m, q, H, v = start
        st = _State(kind, m, ("G",) if q is not None else None, None, H, v)
        if kind == "sim" and H in (12, 13, 15, 17):
            st.aq2 = ("Gv",)
        log = [f"start {st.show()}"] if verbose else []
        for j, (s, ln) in enumerate(spans):
            nxt = self._step(st, j, ln, value)
            if nxt is None:
                if verbose:
                    log.append(f"step {j}: dead end")
                return TraceResult(False, f"step {j} leaves the circuit", log)
            st = nxt
            if verbose:
                log.append(f"step {j}: {st.show()}")
        end = self._name(st, G, value)
        ok = end == a
        return TraceResult(ok, "reached a" if ok else "path ends elsewhere", log)

    def _step(self, st: _State, j: int, ln: int, value):
        d, N, L, n = self.d, self.N, self.L, self.n
        kind = st.kind
        if kind in ("input", "v0", "v1", "propc"):
            return None
        if kind == "output":
            if ln > L:
                return None
            if ln == L and value(j) >= N:
                return None
            return _State("prop", d + 1, j, None, 0)
        if kind == "prop":
            if ln > 1:
                return None
            s = value(j)
            if s == 0:
                return _State("sim", d, st.aq, None, 0)
            return _State("propc", d + 1, st.aq, None, 1)
        H = st.H
        if H in _CONSTANT_H:
            return None
        if H in _SHORT:
            if ln > 2:
                return None
            t = _SHORT[H].get(value(j))
            return None if t is None else _State("sim", st.m, st.aq, st.aq2, t)
        if H in (8, 9):
            if ln < L or (ln == L and value(j) < N):
                return _State("sim", st.m, st.aq, j, 12 if H == 8 else 13)
            if ln == L:  # the filler position N
                return _State("v0" if H == 8 else "v1")
            i = value(j) - (N + 1)
            if not 0 <= i < n:
                return None
            return _State("sim", st.m, st.aq, None, 10 if H == 8 else 11, i)
        if H in _SELECT_FROM:
            if ln > 1:
                return None
            t = _SELECT_FROM[H].get(value(j))
            if t is None:
                return None
            if t == "input":
                return _State("input", v=st.v)
            return _State("sim", st.m, st.aq, st.aq2, t, st.v)
        if H in _PREV_FROM:
            if ln > 1:
                return None
            s = value(j)
            if s == 0:
                if st.m == 1:
                    return _State("v0")
                return _State("sim", st.m - 1, st.aq2, None, 0)
            if s == 1:
                return _State("sim", st.m, st.aq, st.aq2, _PREV_FROM[H])
            return None
        if H == 17:
            if ln > 1 or value(j) != 0:
                return None
            return _State("sim", st.m, st.aq, st.aq2, 15)
        return None

    def _name(self, st: _State, G: int, value) -> int:
        kind = st.kind
        if kind == "input":
            return st.v
        if kind == "output":
            return self.n
        if kind == "v0":
            return id_to_number((0, 0))
        if kind == "v1":
            return id_to_number((0, 1))
        start = self.locate(G)

        def read(addr):
            if addr == ("G",):
                return start[2]
            if addr == ("Gv",):
                return start[4]
            return value(addr)

        q = read(st.aq)
        if kind in ("prop", "propc"):
            return id_to_number((self.d + 1, q, st.H))
        if st.H <= 9:
            return id_to_number((st.m, q, st.H))
        if st.H in (10, 11, 14, 16):
            return id_to_number((st.m, q, st.H, st.v))
        return id_to_number((st.m, q, st.H, read(st.aq2)))

    def __call__(self, w: str) -> bool:
        return self.trace(w).accepted


def build_layered_E(C: FamilyOracle, n: int, k: int, L: int | None = None):
    """The extended layout of the simgate grid and its path tracer."""
    layout = extended_layout(C, n, k, L)
    circuit = build_simgate_family(C, n, k, layout)
    tracer = PathTracer(n, k, layout, max_steps=longest_path(circuit))
    return circuit, tracer
