"""Command-line entry point.

Exit status is 0 on success, 1 when a check finds violations and 2 on
usage errors.  Every bitstring is printed as ASCII 0/1; an empty bitstring
prints as ``eps``.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys

from . import __version__
from .circuit import Circuit, evaluate, from_json, predicate_table, stats, to_dot, to_json, truth_table
from .codec import MalformedList, decode_list, encode_list, is_bitstring, project
from .conlang import (
    BoundExceeded, InconsistentOracle, consistency_check, materialize, path_words, words_of_circuit,
)

DEFAULT_GATE_CAP = 1 << 14
DEFAULT_EXHAUSTIVE_CAP = 12
DEFAULT_PATH_CAP = 6


class UsageError(Exception):
    pass


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _bits(s: str, what: str = "argument") -> str:
    s = "" if s == "eps" else s
    if not is_bitstring(s):
        raise UsageError(f"{what} {s!r} is not a bitstring")
    return s


def _show(b: str) -> str:
    return b if b else "eps"


# shared argument groups -------------------------------------------------------

def _limits(p, exhaustive=False, paths=False):
    p.add_argument("--cap", type=int, default=DEFAULT_GATE_CAP, help="largest number of gates to materialize")
    if exhaustive:
        p.add_argument("--exhaustive-cap", type=int, default=DEFAULT_EXHAUSTIVE_CAP,
                       help="largest n for exhaustive truth tables")
    if paths:
        p.add_argument("--max-path", type=int, default=DEFAULT_PATH_CAP, help="longest path to enumerate")


def _slice_args(p, required=True):
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--k", type=int, default=None, help="parameter; defaults to the family's kappa")


def _format_arg(p, default="json"):
    p.add_argument("--format", choices=("json", "dot", "stats"), default=default)


def _family(name):
    from .families import UnknownFamily, builtin
    try:
        return builtin(name)
    except UnknownFamily:
        from .families import names
        raise UsageError(f"unknown family {name!r}; known: {', '.join(names())}") from None


def _k_for(problem, n, k):
    if k is not None:
        return k
    return problem.kappa("0" * n)


def _materialize(o, n, k, cap):
    try:
        return materialize(o, n, k, cap)
    except BoundExceeded as exc:
        raise UsageError(str(exc)) from None


def _emit_circuit(c: Circuit, fmt: str, name: str = "C") -> None:
    if fmt == "json":
        _out(to_json(c))
    elif fmt == "dot":
        sys.stdout.write(to_dot(c, name))
    else:
        s = stats(c)
        _out(f"inputs {c.n_inputs}")
        _out(f"outputs {len(c.outputs)}")
        _out(f"size {s.size}")
        _out(f"depth {s.depth}")


def _read_circuit(path: str) -> Circuit:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return from_json(text)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read circuit from {path}: {exc}") from None


def _check_size(n, cap):
    if n > cap:
        raise UsageError(f"n = {n} is above the exhaustive cap {cap}")


# codec ------------------------------------------------------------------------------

def cmd_codec(a):
    if a.action == "encode":
        _out(encode_list([_bits(x, "item") for x in a.items]))
        return 0
    if a.action == "decode":
        if len(a.items) != 1:
            raise UsageError("decode takes one word")
        try:
            items = decode_list(_bits(a.items[0], "word"))
        except MalformedList as exc:
            _out(f"malformed: {exc}")
            return 1
        for x in items:
            _out(_show(x))
        return 0
    if len(a.items) != 2:
        raise UsageError("project takes a word and an index")
    try:
        i = int(a.items[1])
    except ValueError:
        raise UsageError("the index must be a number") from None
    _out(_show(project(_bits(a.items[0], "word"), i)))
    return 0


# family -------------------------------------------------------------------------------

def cmd_family(a):
    if a.action == "check":
        return _family_check(a)
    if a.name is None:
        raise UsageError("a family name is needed")
    problem, o = _family(a.name)
    if a.action == "eval":
        x = _bits(a.input, "input")
        n = len(x) if a.n is None else a.n
        if n != len(x):
            raise UsageError(f"--n {n} does not match an input of length {len(x)}")
        k = problem.kappa(x) if a.k is None else a.k
        _out(evaluate(_materialize(o, n, k, a.cap), x))
        return 0
    if a.n is None:
        raise UsageError("--n is required")
    k = _k_for(problem, a.n, a.k)
    c = _materialize(o, a.n, k, a.cap)
    if a.action == "materialize":
        _emit_circuit(c, a.format, a.name.replace("-", "_"))
        return 0
    # words
    if a.extended:
        for w in sorted(x.to_bits() for x in words_of_circuit(c, a.n, k) if x.is_type_word):
            _out(w)
        for w in path_words(c, a.max_path, k):
            _out(w)
        return 0
    for w in sorted(words_of_circuit(c, a.n, k)):
        _out(w.to_binary_bits() if a.binary else w.to_bits())
    return 0


def _family_check(a):
    from .families import check_witness, witness
    if a.witness:
        try:
            o, w, grid, _ = witness(a.witness)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if a.n is not None:
            grid = tuple(g for g in grid if g[0] <= a.n)
        r = check_witness(o, w, grid, seed=a.seed, fuzz=a.fuzz, cap=a.cap)
        sys.stdout.write(r.text(only_violations=not a.verbose))
        return r.exit_status
    if a.name is None:
        raise UsageError("give a family name or --witness")
    problem, o = _family(a.name)
    if a.circuit:
        if a.n is None:
            raise UsageError("--n is required with --circuit")
        c = _read_circuit(a.circuit)
        k = _k_for(problem, a.n, a.k)
        problems = consistency_check(c, o, a.n, k, a.cap)
        for line in problems:
            _out(line)
        _out("ok" if not problems else f"{len(problems)} differences")
        return 1 if problems else 0
    top = a.exhaustive_cap if a.n is None else a.n
    _check_size(top, a.exhaustive_cap)
    bad = 0
    for n in range(top + 1):
        ks = {problem.kappa(x) for x in _all_inputs(n)}
        for k in sorted(ks):
            c = _materialize(o, n, k, a.cap)
            got = truth_table(c)[0]
            # only inputs whose parameter is k are decided by this slice
            mask = predicate_table(n, lambda x, k=k: problem.kappa(x) == k)
            if (got & mask) != (predicate_table(n, problem.membership) & mask):
                bad += 1
                _out(f"({n},{k}) circuit disagrees with the predicate")
    _out("ok" if not bad else f"{bad} slices disagree")
    return 1 if bad else 0


def _all_inputs(n):
    return ("".join(t) for t in itertools.product("01", repeat=n))


# machine --------------------------------------------------------------------------------

def _machine(source: str):
    from .machines import MachineError, dtm, dtm_names, parse_machine, ratm, ratm_names
    if source in ratm_names():
        return ratm(source)
    if source in dtm_names():
        return dtm(source)
    if os.path.exists(source):
        try:
            return parse_machine(open(source).read())
        except MachineError as exc:
            raise UsageError(f"{source}: {exc}") from None
    raise UsageError(f"unknown machine {source!r}; built in: {', '.join(ratm_names() + dtm_names())}")


def cmd_machine(a):
    from .machines import CapExceeded, compile_ratm, count_binary
    from .machines.tm import run
    if a.action == "count":
        if a.N < 0 or a.M < 0:
            raise UsageError("counts are nonnegative")
        r = count_binary(a.N, a.M)
        _out(f"steps {r.steps}")
        _out(f"value {r.value}")
        if a.M:
            _out(f"steps/M {r.steps / a.M:.4f}")
        return 0
    m = _machine(a.machine)
    if a.action == "run":
        x = _bits(a.input, "input")
        r = run(m, x, a.steps, trace=a.trace)
        for line in r.trace:
            _out(line)
        _out(f"{r.verdict.value} {r.steps}")
        return 0
    if not m.is_ratm:
        raise UsageError("only random-access machines compile to circuits")
    try:
        c = compile_ratm(m, a.t, a.n, a.cap)
    except CapExceeded as exc:
        raise UsageError(str(exc)) from None
    _emit_circuit(c, a.format, m.name.replace("-", "_"))
    return 0


# transform ------------------------------------------------------------------------------

def cmd_transform(a):
    if a.action == "renumber":
        from .transforms.substitution import canonical_renumber
        _emit_circuit(canonical_renumber(_read_circuit(a.target)), a.format)
        return 0
    if a.action == "substitute":
        return _substitute(a)
    problem, o = _family(a.target)
    k = _k_for(problem, a.n, a.k)
    from .transforms.layered import build_layered_E
    from .transforms.simgate import LayoutTooSmall, build_simgate_family, extended_layout
    try:
        if a.action == "simgate":
            layout = extended_layout(o, a.n, k) if a.extended else None
            c = build_simgate_family(o, a.n, k, layout, cap=a.cap)
            _emit_circuit(c, a.format, "simgate")
            return 0
        c, tracer = build_layered_E(o, a.n, k)
    except (LayoutTooSmall, BoundExceeded) as exc:
        raise UsageError(str(exc)) from None
    if a.word is None:
        _emit_circuit(c, "stats")
        _out(f"step length cap {tracer.max_step_len}")
        _out(f"step count cap {tracer.max_steps}")
        return 0
    r = tracer.trace(_bits(a.word, "word"), verbose=a.verbose)
    for line in r.log:
        _out(line)
    _out(f"{'accept' if r.accepted else 'reject'}: {r.reason}")
    return 0


def _substitute(a):
    from .transforms.substitution import PlanViolation, builtin_cases, interpret_table, substitute
    cases = builtin_cases()
    if a.target not in cases:
        raise UsageError(f"unknown substitution {a.target!r}; known: {', '.join(cases)}")
    A, B, plan = cases[a.target]
    if a.n is None:
        raise UsageError("--n is required")
    k = 0 if a.k is None else a.k
    try:
        c = materialize(substitute(A, B, plan, a.cap), a.n, k, a.cap)
    except (PlanViolation, BoundExceeded, InconsistentOracle) as exc:
        raise UsageError(str(exc)) from None
    if not a.check:
        _emit_circuit(c, a.format)
        return 0
    _check_size(a.n, a.exhaustive_cap)
    same = truth_table(c) == interpret_table(A, B, plan, a.n, k, a.cap)
    _out("ok" if same else "materialized circuit differs from the interpretation")
    return 0 if same else 1


# fo ----------------------------------------------------------------------------------------

def _formula(text: str):
    from .fologic import FoSyntaxError, parse
    from .fologic.library import FORMULAS, formula
    if text in FORMULAS:
        return formula(text)
    try:
        return parse(text)
    except FoSyntaxError as exc:
        raise UsageError(f"formula: {exc}") from None


def _consts(pairs):
    out = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--const expects name=value, got {item!r}")
        try:
            out[name] = int(value)
        except ValueError:
            raise UsageError(f"--const value {value!r} is not a number") from None
    return out


def _fo_word(a):
    if a.word is not None and a.len is not None:
        raise UsageError("give --word or --len, not both")
    if a.word is not None:
        return _bits(a.word, "word")
    if a.len is not None:
        if a.len < 0:
            raise UsageError("--len is nonnegative")
        return "0" * a.len
    raise UsageError("--word or --len is needed")


def cmd_fo(a):
    from .fologic import (
        FoSyntaxError, UnboundVariable, UnsupportedAtom, define_value, eval_fo, eval_fo_iterated,
        eval_integer, parse_block, square_domain, to_text,
    )
    try:
        if a.action == "square":
            f = _formula(a.formula)
            r = square_domain(f)
            if a.word is None and a.len is None:
                _out(to_text(r))
                return 0
            w = _fo_word(a)
            _out(f"squared {str(eval_fo(r, w)).lower()}")
            _out(f"integer {str(eval_integer(f, w)).lower()}")
            return 0
        w = _fo_word(a)
        consts = _consts(a.const)
        if a.action == "eval":
            _out(str(eval_fo(_formula(a.formula), w, consts)).lower())
        elif a.action == "define":
            v = define_value(_formula(a.formula), w)
            _out("none" if v is None else str(v))
        else:
            from .fologic.library import REACH_BLOCK_TEXT, REACH_PSI_TEXT
            block = parse_block(REACH_BLOCK_TEXT if a.block == "reach" else a.block)
            psi = _formula(REACH_PSI_TEXT if a.formula == "reach" else a.formula)
            _out(str(eval_fo_iterated(block, psi, a.t, w, consts)).lower())
    except (FoSyntaxError, UnboundVariable, UnsupportedAtom, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return 0


# export ------------------------------------------------------------------------------------

def cmd_export(a):
    if a.circuit:
        c = _read_circuit(a.circuit)
    else:
        if a.family is None or a.n is None:
            raise UsageError("give --circuit FILE or --family NAME --n N")
        problem, o = _family(a.family)
        c = _materialize(o, a.n, _k_for(problem, a.n, a.k), a.cap)
    _emit_circuit(c, a.action)
    return 0


# parser ------------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="paracirc", description="Tools for parameterized circuit families.")
    p.add_argument("--version", action="version", version=f"paracirc {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("codec", help="list encoding of bitstrings")
    s.add_argument("action", choices=("encode", "decode", "project"))
    s.add_argument("items", nargs="*", help="items to encode, a word to decode, or a word and an index")
    s.set_defaults(func=cmd_codec)

    s = sub.add_parser("family", help="built-in families")
    s.add_argument("action", choices=("materialize", "eval", "words", "check"))
    s.add_argument("name", nargs="?")
    _slice_args(s, required=False)
    s.add_argument("--input", default="", help="input bitstring for eval")
    s.add_argument("--binary", action="store_true", help="words with n and k in binary")
    s.add_argument("--extended", action="store_true", help="type words and path words")
    s.add_argument("--circuit", help="JSON circuit to compare with the family slice")
    s.add_argument("--witness", help="registered uniformity witness to check")
    s.add_argument("--fuzz", type=int, default=20, help="fuzzed non-words per slice")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--verbose", action="store_true", help="print every tested word")
    _format_arg(s)
    _limits(s, exhaustive=True, paths=True)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("machine", help="Turing machines")
    s.add_argument("action", choices=("run", "compile", "count"))
    s.add_argument("machine", nargs="?", help="built-in machine name or machine file")
    s.add_argument("--input", default="")
    s.add_argument("--steps", type=int, default=10_000, help="step cap for run")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--t", type=int, default=1, help="step count for compile")
    s.add_argument("--n", type=int, default=1, help="input length for compile")
    s.add_argument("--N", type=int, default=0, help="counter start for count")
    s.add_argument("--M", type=int, default=0, help="number of increments for count")
    _format_arg(s)
    _limits(s)
    s.set_defaults(func=cmd_machine)

    s = sub.add_parser("transform", help="circuit transformations")
    s.add_argument("action", choices=("substitute", "simgate", "layered-e", "renumber"))
    s.add_argument("target", help="family, substitution case or JSON circuit file")
    _slice_args(s, required=False)
    s.add_argument("--extended", action="store_true", help="use the extended simgate layout")
    s.add_argument("--check", action="store_true", help="compare the substitution with its interpretation")
    s.add_argument("--word", help="path word for the layered-e tracer")
    s.add_argument("--verbose", action="store_true")
    _format_arg(s)
    _limits(s, exhaustive=True)
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("fo", help="first-order formulas on word models")
    s.add_argument("action", choices=("eval", "define", "iterate", "square"))
    s.add_argument("formula", help="library formula name or formula text ('reach' for iterate)")
    s.add_argument("--word")
    s.add_argument("--len", type=int, help="use the all-zero word of this length")
    s.add_argument("--const", action="append", help="name=value for a free variable or constant")
    s.add_argument("--block", default="reach", help="quantifier block for iterate")
    s.add_argument("--t", type=int, default=1, help="copies of the block")
    s.set_defaults(func=cmd_fo)

    s = sub.add_parser("export", help="circuit interchange formats")
    s.add_argument("action", choices=("dot", "json"))
    s.add_argument("--circuit", help="JSON circuit file, '-' for stdin")
    s.add_argument("--family")
    _slice_args(s, required=False)
    _limits(s)
    s.set_defaults(func=cmd_export)
    return p


def run(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
        if a.command == "machine":
            if a.action != "count" and a.machine is None:
                raise UsageError("a machine is needed")
        if a.command == "transform" and a.action in ("simgate", "layered-e") and a.n is None:
            raise UsageError("--n is required")
        return a.func(a)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
