"""First-order logic on word models."""

from .evaluate import (
    UnboundVariable, WordModel, define_value, eval_brute, eval_fo, eval_fo_iterated, unroll,
)
from .squaring import UnsupportedAtom, eval_integer, pair_base, square_domain, squared_top
from .syntax import (
    FoSyntaxError, QuantifierBlock, free_vars, parse, parse_block, quantifier_depth, to_text,
)

__all__ = [
    "FoSyntaxError", "QuantifierBlock", "UnboundVariable", "UnsupportedAtom", "WordModel",
    "define_value", "eval_brute", "eval_fo", "eval_fo_iterated", "eval_integer", "free_vars",
    "pair_base", "parse", "parse_block", "quantifier_depth", "square_domain", "squared_top",
    "to_text", "unroll",
]
