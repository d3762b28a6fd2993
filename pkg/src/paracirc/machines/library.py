"""Small machines used as fixtures and as compiler test cases."""

from __future__ import annotations

from .tm import MachineDesc, build_machine, parse_machine

_RATM_HEADER = "tapes {tapes}\ninput none\nstart s\naccept acc\nreject rej\nquery q 0\n"

_RATMS = {
    "always-accept": (1, """
s * * -> acc * S
"""),
    # accept iff x0 = 1
    "query-bit0": (1, """
s * * -> q 0 S
q * 1 -> acc * S
q * 0 -> rej * S
q * ! -> rej * S
"""),
    # accept iff x0 = 1 and x1 = 1; the query tape tells the two queries apart
    "two-query-and": (1, """
s * * -> q 0 S
q 0 1 -> q 1 S
q 0 0 -> rej * S
q 0 ! -> rej * S
q 1 1 -> acc * S
q 1 0 -> rej * S
q 1 ! -> rej * S
"""),
    # accept iff (x0 ? x1 : x2); tape 1 records which second query was asked
    "adaptive-select": (2, """
s * * * -> q 0 _ S S
q 0 _ 1 -> q 1 1 S S
q 0 _ 0 -> b 1 0 R S
q 0 _ ! -> rej * * S S
b * * * -> q 0 * L S
q * 1 1 -> acc * * S S
q * 1 0 -> rej * * S S
q * 1 ! -> rej * * S S
q * 0 1 -> acc * * S S
q * 0 0 -> rej * * S S
q * 0 ! -> rej * * S S
"""),
    # accept iff bit 1 is 1 or out of range
    "bit1-or-short": (1, """
s * * -> q 1 S
q * 1 -> acc * S
q * ! -> acc * S
q * 0 -> rej * S
"""),
    # asks for a non-numeric address and accepts iff the answer is out-of-range
    "garbage-address": (1, """
s * * -> q # S
q * ! -> acc * S
q * 0 -> rej * S
q * 1 -> rej * S
"""),
    "loop": (1, """
s * * -> s * S
"""),
}

_DTMS = {
    "accept-now": """
s * -> acc * S
""",
    # accept iff the first input bit is 1
    "first-bit": """
s 1 -> acc * S
s 0 -> rej * S
s _ -> rej * S
""",
}

COMPILER_CASES = ("always-accept", "query-bit0", "two-query-and")


def ratm(name: str) -> MachineDesc:
    tapes, body = _RATMS[name]
    return parse_machine(f"name {name}\n" + _RATM_HEADER.format(tapes=tapes) + body)


def dtm(name: str) -> MachineDesc:
    body = _DTMS[name]
    return parse_machine(f"name {name}\ntapes 1\ninput 0\nstart s\naccept acc\nreject rej\n" + body)


def ratm_names() -> list[str]:
    return list(_RATMS)


def dtm_names() -> list[str]:
    return list(_DTMS)


def machine_text(name: str) -> str:
    if name in _RATMS:
        tapes, body = _RATMS[name]
        return f"name {name}\n" + _RATM_HEADER.format(tapes=tapes) + body.lstrip("\n")
    return f"name {name}\ntapes 1\ninput 0\nstart s\naccept acc\nreject rej\n" + _DTMS[name].lstrip("\n")


# A linear-time decider for the binary connection language of a constant
# family, built rule by rule.  Each item is read as a doubled-digit length,
# copied onto a counter tape, and the payload is consumed while counting down.

def _prefix_rules(tag, after):
    """Read one length prefix into the counter (tape 1) and park on its last digit."""
    r = []
    # the counter digits start at cell 1; cell 0 holds '#'
    r += [(f"{tag}.first", "0**", f"{tag}.first0", "***", "RSS"),
          (f"{tag}.first", "1**", f"{tag}.first1", "***", "RSS"),
          (f"{tag}.first0", "0**", f"{tag}.zsep", "*0*", "RRS"),
          (f"{tag}.zsep", "0**", f"{tag}.zsep1", "***", "RSS"),
          (f"{tag}.zsep1", "1**", f"{tag}.clean", "***", "RSS"),
          (f"{tag}.first1", "1**", f"{tag}.pair", "*1*", "RRS"),
          (f"{tag}.pair", "0**", f"{tag}.pair0", "***", "RSS"),
          (f"{tag}.pair", "1**", f"{tag}.pair1", "***", "RSS"),
          (f"{tag}.pair0", "0**", f"{tag}.pair", "*0*", "RRS"),
          (f"{tag}.pair0", "1**", f"{tag}.clean", "***", "RSS"),
          (f"{tag}.pair1", "1**", f"{tag}.pair", "*1*", "RRS")]
    # blank what is left of a longer earlier counter, then walk back
    for d in "01":
        r.append((f"{tag}.clean", f"*{d}*", f"{tag}.clean", "*_*", "SRS"))
        r.append((f"{tag}.back", f"*{d}*", after, "***", "SSS"))
    r.append((f"{tag}.clean", "*_*", f"{tag}.back", "***", "SLS"))
    r.append((f"{tag}.back", "*_*", f"{tag}.back", "***", "SLS"))
    return r


def _payload_rules(tag, mode, eat, done):
    """Count the payload down; ``eat`` maps (input bit, tape 2 symbol) to a
    (next mode, tape 2 write, tape 2 move) triple, ``done`` is the state at the end."""
    dec, ret, take = f"{tag}.{mode}.dec", f"{tag}.{mode}.ret", f"{tag}.{mode}.eat"
    r = [(dec, "*1*", ret, "*0*", "SRS"),
         (dec, "*0*", dec, "*1*", "SLS"),
         (dec, "*#*", done, "***", "SRS")]
    for d in "01":
        r.append((ret, f"*{d}*", ret, "***", "SRS"))
    r.append((ret, "*_*", take, "***", "SLS"))
    for (b, t2), (nxt, w2, m2) in eat.items():
        r.append((take, f"{b}*{t2}", f"{tag}.{nxt}.dec", f"**{w2}", f"RS{m2}"))
    return r


def const_bd_machine(code: int) -> MachineDesc:
    """Decides ``{<n, code, eps, bin(n), bin(k)>}``, the binary connection
    language of a family whose only non-input gate is its output n with type
    ``code`` and no predecessors."""
    a_bit = "01"[code]
    if code not in (0, 1):
        raise ValueError("constant gates have type code 0 or 1")
    rules = [("s", "***", "g.first", "*##", "SRR")]
    # item 0: G, copied to tape 2 and checked canonical
    rules += _prefix_rules("g", "g.none.dec")
    copy = {"none": {("0", "*"): ("zero", "0", "R"), ("1", "*"): ("one", "1", "R")},
            "zero": {},
            "one": {("0", "*"): ("one", "0", "R"), ("1", "*"): ("one", "1", "R")}}
    for mode, eat in copy.items():
        done = f"g.rewind" if mode != "none" else "rej"
        rules += _payload_rules("g", mode, eat, done)
    rules += [("g.rewind", "**0", "g.rewind", "***", "SSL"),
              ("g.rewind", "**1", "g.rewind", "***", "SSL"),
              ("g.rewind", "**_", "g.rewind", "***", "SSL"),
              ("g.rewind", "**#", "a.first", "***", "SSR")]
    # item 1: exactly the type code
    rules += _prefix_rules("a", "a.none.dec")
    rules += _payload_rules("a", "none", {(a_bit, "*"): ("seen", "*", "S")}, "rej")
    rules += _payload_rules("a", "seen", {}, "p.first")
    # item 2: empty
    rules += _prefix_rules("p", "p.none.dec")
    rules += _payload_rules("p", "none", {}, "n.first")
    # item 3: equal to the copy of G
    rules += _prefix_rules("n", "n.same.dec")
    rules += _payload_rules("n", "same", {("0", "0"): ("same", "*", "R"), ("1", "1"): ("same", "*", "R")},
                            "n.end")
    rules += [("n.end", "**_", "k.first", "***", "SSS")]
    # item 4: a canonical numeral, then the end of the input
    rules += _prefix_rules("k", "k.none.dec")
    canon = {"none": {("0", "*"): ("zero", "*", "S"), ("1", "*"): ("one", "*", "S")},
             "zero": {},
             "one": {("0", "*"): ("one", "*", "S"), ("1", "*"): ("one", "*", "S")}}
    for mode, eat in canon.items():
        rules += _payload_rules("k", mode, eat, "rej" if mode == "none" else "k.end")
    rules += [("k.end", "_**", "acc", "***", "SSS")]
    rules = [(q, tuple(rd), q2, tuple(wr), tuple(mv)) for q, rd, q2, wr, mv in rules]
    return build_machine(f"const{1 - code}-binary-connection", 3, "s", "acc", "rej", rules)
