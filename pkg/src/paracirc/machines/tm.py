"""Multitape deterministic and random-access Turing machines.

Tapes are one-way infinite; moving left on cell 0 stays put.  A deterministic
machine finds its input on tape 0 (read-only).  A random-access machine has no
input tape: it writes an address on its query tape and enters the query state,
and that same step puts the addressed input bit into a response cell.  The
response cell is read as one extra symbol after the tape symbols:
``_`` before the first query, then ``0``, ``1`` or ``!`` (out of range or
not a number).  The query tape keeps its content across queries.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

BLANK = "_"
WILDCARD = "*"
ALPHABET = (BLANK, "0", "1", "#")
MOVES = {"L": -1, "R": 1, "S": 0}

BOT = "⊥"
RESPONSE_SYMBOL = {"0": "0", "1": "1", BOT: "!"}
NO_RESPONSE = BLANK


class MachineError(ValueError):
    pass


class Verdict(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Query:
    address: int | None  # None when the query tape does not hold a number
    response: str


@dataclass(frozen=True)
class RunResult:
    verdict: Verdict
    steps: int
    query_log: tuple = ()
    trace: tuple = ()
    overflow: bool = False  # more queries than scripted responses

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT


@dataclass(frozen=True, eq=False)
class MachineDesc:
    name: str
    tapes: int
    start: str
    accept: str
    reject: str
    delta: Mapping = field(repr=False)
    input_tape: bool = True
    query_state: str | None = None
    query_tape: int | None = None
    alphabet: tuple = ALPHABET

    @property
    def is_ratm(self) -> bool:
        return self.query_state is not None

    @property
    def reads_width(self) -> int:
        return self.tapes + (1 if self.is_ratm else 0)

    @property
    def states(self) -> frozenset:
        s = {self.start, self.accept, self.reject}
        for (q, _), (q2, _, _) in self.delta.items():
            s.update((q, q2))
        if self.query_state:
            s.add(self.query_state)
        return frozenset(s)


def _read_alphabets(tapes: int, ratm: bool, alphabet) -> list:
    cols = [alphabet] * tapes
    if ratm:
        cols.append((NO_RESPONSE, "0", "1", "!"))
    return cols


def build_machine(name, tapes, start, accept, reject, rules, *, input_tape=True,
                  query=None, alphabet=ALPHABET) -> MachineDesc:
    """Assemble a machine from rules that may contain wildcards.

    ``rules`` holds ``(state, reads, next_state, writes, moves)`` entries.  A
    ``*`` read matches any symbol and a ``*`` write keeps the symbol read.
    More specific rules (fewer wildcards) win over general ones; two rules of
    equal specificity that overlap are an error.
    """
    ratm = query is not None
    width = tapes + (1 if ratm else 0)
    cols = _read_alphabets(tapes, ratm, alphabet)
    delta = {}
    rank = {}
    for state, reads, nxt, writes, moves in rules:
        reads, writes, moves = tuple(reads), tuple(writes), tuple(moves)
        if len(reads) != width or len(writes) != tapes or len(moves) != tapes:
            raise MachineError(f"rule for {state} has the wrong number of columns")
        if any(mv not in MOVES for mv in moves):
            raise MachineError(f"bad move in rule for {state}: {moves}")
        if state in (accept, reject):
            raise MachineError(f"halting state {state} has a transition")
        choices = [col if r == WILDCARD else (r,) for r, col in zip(reads, cols)]
        spec = sum(r == WILDCARD for r in reads)
        for concrete in itertools.product(*choices):
            w = tuple(c if wr == WILDCARD else wr for wr, c in zip(writes, concrete))
            if input_tape and not ratm and w[0] != concrete[0]:
                raise MachineError(f"rule for {state} writes on the read-only input tape")
            key = (state, concrete)
            if key in delta:
                if rank[key] == spec:
                    raise MachineError(f"nondeterministic rules for {key}")
                if rank[key] < spec:
                    continue
            delta[key] = (nxt, w, moves)
            rank[key] = spec
    if start in (accept, reject):
        raise MachineError("start state must not be halting")
    qs, qt = (query if ratm else (None, None))
    if ratm and not 0 <= qt < tapes:
        raise MachineError("query tape out of range")
    return MachineDesc(name, tapes, start, accept, reject, delta,
                       input_tape=input_tape and not ratm, query_state=qs, query_tape=qt,
                       alphabet=tuple(alphabet))


def read_address(tape: Sequence[str]) -> int | None:
    """Binary number from cell 0 up to the first blank, or None."""
    digits = []
    for s in tape:
        if s == BLANK:
            break
        digits.append(s)
    if not digits or any(d not in "01" for d in digits):
        return None
    return int("".join(digits), 2)


def input_responder(x: str) -> Callable:
    def respond(address, index):
        if address is None or address >= len(x):
            return BOT
        return x[address]
    return respond


def scripted_responder(r: Sequence[str]) -> Callable:
    """The i-th query gets ``r[i]``; raises IndexError past the script."""
    def respond(address, index):
        return r[index]
    return respond


def run(m: MachineDesc, x: str, cap: int, responder=None, trace: bool = False) -> RunResult:
    tapes = [[] for _ in range(m.tapes)]
    if m.input_tape:
        tapes[0] = list(x)
    heads = [0] * m.tapes
    state = m.start
    response = NO_RESPONSE
    log = []
    lines = []
    steps = 0
    if m.is_ratm and responder is None:
        responder = input_responder(x)
    while steps < cap:
        reads = tuple(t[h] if h < len(t) else BLANK for t, h in zip(tapes, heads))
        if m.is_ratm:
            reads += (response,)
        rule = m.delta.get((state, reads))
        if rule is None:
            if trace:
                lines.append(f"{steps} {state} no rule for {''.join(reads)}: reject")
            return RunResult(Verdict.REJECT, steps, tuple(log), tuple(lines))
        state, writes, moves = rule
        for i, (w, mv) in enumerate(zip(writes, moves)):
            t = tapes[i]
            h = heads[i]
            if h >= len(t):
                t.extend(BLANK * (h + 1 - len(t)))
            t[h] = w
            heads[i] = max(0, h + MOVES[mv])
        steps += 1
        event = ""
        if m.is_ratm and state == m.query_state:
            address = read_address(tapes[m.query_tape])
            try:
                value = responder(address, len(log))
            except IndexError:
                return RunResult(Verdict.REJECT, steps, tuple(log), tuple(lines), overflow=True)
            log.append(Query(address, value))
            response = RESPONSE_SYMBOL[value]
            event = f" query {address if address is not None else '-'} -> {value}"
        if trace:
            lines.append(f"{steps} {state} heads={','.join(map(str, heads))}{event}")
        if state == m.accept:
            return RunResult(Verdict.ACCEPT, steps, tuple(log), tuple(lines))
        if state == m.reject:
            return RunResult(Verdict.REJECT, steps, tuple(log), tuple(lines))
    return RunResult(Verdict.TIMEOUT, steps, tuple(log), tuple(lines))


def simulate_dtm(m: MachineDesc, x: str, cap: int, trace: bool = False) -> RunResult:
    if m.is_ratm:
        raise MachineError("simulate_dtm needs a machine without a query state")
    return run(m, x, cap, trace=trace)


def simulate_ratm(m: MachineDesc, x: str, cap: int, trace: bool = False) -> RunResult:
    if not m.is_ratm:
        raise MachineError("simulate_ratm needs a machine with a query state")
    return run(m, x, cap, input_responder(x), trace=trace)


# Text format ---------------------------------------------------------------
#
#   name NAME
#   tapes K
#   input 0 | none
#   alphabet _ 0 1 #
#   start S / accept A / reject R
#   query STATE TAPE
#   STATE r1 .. rK [resp] -> NEXT w1 .. wK m1 .. mK
#
# A '#' starts a comment only at the beginning of a line or after whitespace
# when followed by whitespace, so '#' remains usable as a tape symbol.

def _strip_comment(line: str) -> str:
    out = []
    for tok in line.split():
        if tok.startswith("#") and len(tok) > 1:
            break
        if tok == "#" and not out:
            break
        out.append(tok)
    return " ".join(out)


def parse_machine(text: str) -> MachineDesc:
    header = {"name": "machine", "tapes": None, "input": "0", "alphabet": None,
              "start": None, "accept": None, "reject": None, "query": None}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        toks = line.split()
        if "->" in toks:
            i = toks.index("->")
            rules.append((lineno, toks[:i], toks[i + 1:]))
            continue
        key = toks[0]
        if key not in header:
            raise MachineError(f"line {lineno}: unknown header {key!r}")
        header[key] = toks[1:]
    try:
        tapes = int(header["tapes"][0])
        start, accept, reject = header["start"][0], header["accept"][0], header["reject"][0]
    except (TypeError, IndexError, ValueError):
        raise MachineError("tapes, start, accept and reject headers are required") from None
    query = None
    if header["query"]:
        query = (header["query"][0], int(header["query"][1]))
    width = tapes + (1 if query else 0)
    parsed = []
    for lineno, lhs, rhs in rules:
        if len(lhs) != 1 + width or len(rhs) != 1 + 2 * tapes:
            raise MachineError(f"line {lineno}: expected {width} reads, {tapes} writes and {tapes} moves")
        parsed.append((lhs[0], lhs[1:], rhs[0], rhs[1:1 + tapes], rhs[1 + tapes:]))
    inp = header["input"]
    input_tape = not (inp and inp[0] == "none")
    name = header["name"][0] if isinstance(header["name"], list) else header["name"]
    alphabet = tuple(header["alphabet"]) if header["alphabet"] else ALPHABET
    return build_machine(name, tapes, start, accept, reject, parsed, input_tape=input_tape,
                         query=query, alphabet=alphabet)


def format_machine(m: MachineDesc) -> str:
    """Render with every rule spelled out (no wildcards)."""
    lines = [f"name {m.name}", f"tapes {m.tapes}",
             f"input {'0' if m.input_tape else 'none'}",
             "alphabet " + " ".join(m.alphabet),
             f"start {m.start}", f"accept {m.accept}", f"reject {m.reject}"]
    if m.is_ratm:
        lines.append(f"query {m.query_state} {m.query_tape}")
    for (q, reads), (q2, writes, moves) in sorted(m.delta.items()):
        lines.append(f"{q} {' '.join(reads)} -> {q2} {' '.join(writes)} {' '.join(moves)}")
    return "\n".join(lines) + "\n"
