"""Self-delimiting list encoding and canonical binary numerals.

Bitstrings are plain ``str`` values over ``'0'``/``'1'``; position 0 is the
leftmost character.  A list ``<x0, ..., xm>`` is written item by item as
``delta(|xi|) + "01" + xi`` where ``delta`` spells the binary length with
every digit doubled (``0 -> 00``, ``1 -> 11``).
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

SEPARATOR = "01"
# a length prefix is a run of doubled digits closed by the separator
_PREFIX = re.compile(r"((?:00|11)*)01")


class MalformedList(ValueError):
    """Raised when a bitstring is not an exact list encoding."""


class NonCanonicalNumeral(ValueError):
    """Raised in strict mode for numerals with leading zeros (or empty)."""


def is_bitstring(s: str) -> bool:
    return not s.strip("01")


def nat_to_bits(v: int) -> str:
    if v < 0:
        raise ValueError(f"negative value {v}")
    return format(v, "b")


def bits_to_nat(b: str, strict: bool = True) -> int:
    if not b or not is_bitstring(b):
        raise NonCanonicalNumeral(f"not a numeral: {b!r}")
    if strict and len(b) > 1 and b[0] == "0":
        raise NonCanonicalNumeral(f"leading zeros in {b!r}")
    return int(b, 2)


def is_numeral(b: str) -> bool:
    """True for canonical numerals: nonempty, no leading zeros except ``"0"``."""
    return bool(b) and is_bitstring(b) and (b == "0" or b[0] == "1")


def delta(length: int) -> str:
    """Doubled-digit length prefix; ``delta(0) == "00"``."""
    return nat_to_bits(length).replace("1", "11").replace("0", "00")


def encode_list(items: Iterable[str]) -> str:
    parts = []
    for x in items:
        if not is_bitstring(x):
            raise ValueError(f"item is not a bitstring: {x!r}")
        parts.append(delta(len(x)) + SEPARATOR + x)
    return "".join(parts)


def _scan_item(w: str, pos: int) -> tuple[int, int]:
    """Read one length prefix starting at ``pos``.

    Returns ``(payload_start, payload_length)``.  Only canonical prefixes are
    accepted, which keeps every parse unique.
    """
    mt = _PREFIX.match(w, pos)
    if mt is None:
        raise MalformedList(f"bad length prefix at {pos}")
    digits = mt.group(1)[::2]
    if not digits:
        raise MalformedList(f"empty length prefix at {pos}")
    if len(digits) > 1 and digits[0] == "0":
        raise MalformedList(f"non-canonical length prefix at {pos}")
    length = int(digits, 2)
    start = mt.end()
    if start + length > len(w):
        raise MalformedList(f"truncated payload at {start}")
    return start, length


def item_spans(w: str) -> list[tuple[int, int]]:
    """``(start, length)`` of every payload in ``w``; raises MalformedList."""
    if w.strip("01"):
        raise MalformedList("not a bitstring")
    spans = []
    pos = 0
    end = len(w)
    match = _PREFIX.match
    while pos < end:
        mt = match(w, pos)
        if mt is None:
            raise MalformedList(f"bad length prefix at {pos}")
        digits = mt.group(1)[::2]
        if not digits or (digits[0] == "0" and len(digits) > 1):
            raise MalformedList(f"empty or non-canonical length prefix at {pos}")
        start = mt.end()
        pos = start + int(digits, 2)
        if pos > end:
            raise MalformedList(f"truncated payload at {start}")
        spans.append((start, pos - start))
    return spans


def decode_list(w: str) -> list[str]:
    return [w[s:s + n] for s, n in item_spans(w)]


def try_decode(w: str, arity: int | None = None) -> list[str] | None:
    try:
        items = decode_list(w)
    except MalformedList:
        return None
    if arity is not None and len(items) != arity:
        return None
    return items


def project(w: str, i: int) -> str:
    """Total projection: item ``i`` of ``w``, or ``"0"`` when there is none."""
    items = try_decode(w)
    if items is None or i >= len(items):
        return "0"
    return items[i]


# Structured gate ids: tuples of naturals map injectively to numbers through
# the list encoding of their numerals.  The encoding of a nonempty tuple
# starts with "11", so the resulting number has no leading zeros.

@lru_cache(maxsize=1 << 16)
def id_to_bits(gid) -> str:
    if isinstance(gid, int):
        return nat_to_bits(gid)
    if not gid:
        raise ValueError("empty structured id")
    return encode_list(id_to_bits(x) for x in gid)


def id_to_number(gid) -> int:
    if isinstance(gid, int):
        return gid
    return int(id_to_bits(gid), 2)


@lru_cache(maxsize=1 << 16)
def number_to_tuple(x: int) -> tuple[int, ...] | None:
    """Invert :func:`id_to_number` for flat tuples of naturals, else None."""
    items = try_decode(nat_to_bits(x))
    if not items or not all(is_numeral(b) for b in items):
        return None
    return tuple(int(b, 2) for b in items)


def encode_numerals(values: Sequence[int]) -> str:
    return encode_list(nat_to_bits(v) for v in values)
