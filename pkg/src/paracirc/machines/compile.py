"""Compile a time-bounded random-access machine into a depth-3 circuit.

The circuit guesses all response strings ``r in R^t`` at once: one And gate
per 2-bit code string of length ``2t``, all feeding a single output Or.  The
And gate for ``r`` checks that ``r`` is the true response sequence on the
given input and that the machine, fed the responses of ``r``, accepts.
"""

from __future__ import annotations

from functools import lru_cache

from ..circuit import Circuit, Gate, GateType
from .tm import BOT, MachineDesc, RunResult, Verdict, run, scripted_responder

DEFAULT_CAP = 1 << 14

# two-bit codes for the response set; "11" is the invalid code
R_CODE = {"0": "00", "1": "01", BOT: "10"}
CODE_R = {v: k for k, v in R_CODE.items()}


class CapExceeded(RuntimeError):
    pass


def encode_responses(r) -> str:
    return "".join(R_CODE[v] for v in r)


@lru_cache(maxsize=4096)
def _scripted_run(m: MachineDesc, t: int, r: tuple) -> RunResult:
    return run(m, "", t, scripted_responder(r))


def branch_run(m: MachineDesc, t: int, r) -> RunResult:
    """The machine run for at most t steps with the i-th query answered by r[i]."""
    return _scripted_run(m, t, tuple(r))


def compiled_size(t: int, n: int) -> int:
    return 2 * n + 3 + 4 ** t


def compile_ratm(m: MachineDesc, t: int, n: int, cap: int = DEFAULT_CAP) -> Circuit:
    """Gate numbers: inputs 0..n-1, output n, constants n+1 (0) and n+2 (1),
    Not of input i at n+3+i, the And gate of code string r at 2n+3+r."""
    if not m.is_ratm:
        raise ValueError("compile_ratm needs a random-access machine")
    if compiled_size(t, n) > cap:
        raise CapExceeded(f"{compiled_size(t, n)} gates exceed cap {cap}")
    V0, V1 = n + 1, n + 2
    gates = {i: Gate(GateType.INPUT) for i in range(n)}
    gates[V0] = Gate(GateType.CONST0)
    gates[V1] = Gate(GateType.CONST1)
    for i in range(n):
        gates[n + 3 + i] = Gate(GateType.NOT, (i,))
    base = 2 * n + 3
    ands = []
    for ridx in range(4 ** t):
        code = format(ridx, f"0{2 * t}b") if t else ""
        slots = [code[2 * j:2 * j + 2] for j in range(t)]
        if "11" in slots:
            # a code outside R makes the branch constant 0 whatever happens
            preds = [V0 if s == "11" else V1 for s in slots] + [V0]
        else:
            r = [CODE_R[s] for s in slots]
            res = branch_run(m, t, r)
            preds = []
            for j, rj in enumerate(r):
                if j >= len(res.query_log):
                    preds.append(V1)  # query never made: no constraint
                    continue
                addr = res.query_log[j].address
                in_range = addr is not None and addr < n
                if in_range:
                    preds.append({"1": addr, "0": n + 3 + addr, BOT: V0}[rj])
                else:
                    preds.append(V1 if rj == BOT else V0)
            accepted = res.verdict is Verdict.ACCEPT and not res.overflow
            preds.append(V1 if accepted else V0)
        gid = base + ridx
        gates[gid] = Gate(GateType.AND, tuple(preds))
        ands.append(gid)
    gates[n] = Gate(GateType.OR, tuple(ands))
    return Circuit(n, (n,), gates)
