"""Turing machines with step accounting, a circuit compiler for random-access
machines and a binary-counting cost model."""

from .compile import CapExceeded, R_CODE, branch_run, compile_ratm, encode_responses
from .counting import count_binary, count_binary_steps
from .library import COMPILER_CASES, dtm, dtm_names, machine_text, ratm, ratm_names
from .tm import (
    BOT, MachineDesc, MachineError, Query, RunResult, Verdict, build_machine, format_machine,
    parse_machine, read_address, simulate_dtm, simulate_ratm,
)

__all__ = [
    "BOT", "COMPILER_CASES", "CapExceeded", "MachineDesc", "MachineError", "Query", "R_CODE",
    "RunResult", "Verdict", "branch_run", "build_machine", "compile_ratm", "count_binary",
    "count_binary_steps", "dtm", "dtm_names", "encode_responses", "format_machine",
    "machine_text", "parse_machine", "ratm", "ratm_names", "read_address", "simulate_dtm",
    "simulate_ratm",
]
