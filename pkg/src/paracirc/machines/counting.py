"""Cost of counting in binary on a two-tape machine.

The counter tape holds N least-significant bit first; the countdown tape holds
M the same way with no trailing zeros, so it is empty exactly when the count
reaches 0.  Each round increments the counter, decrements the countdown and
returns both heads to cell 0.  Only writes and head moves are charged; loading
N and M is setup and not charged.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class CountResult:
    steps: int
    value: int
    increments: int


def _lsb_bits(v: int) -> list[int]:
    out = []
    while v:
        out.append(v & 1)
        v >>= 1
    return out


def count_binary(N: int, M: int) -> CountResult:
    if N < 0 or M < 0:
        raise ValueError("negative count")
    counter = _lsb_bits(N)
    down = _lsb_bits(M)
    steps = 0
    rounds = 0
    while down:  # cell 0 of the countdown tape is not blank
        # increment: turn trailing 1s into 0s, then write a 1
        h = 0
        while h < len(counter) and counter[h] == 1:
            counter[h] = 0
            h += 1
            steps += 2  # write, move right
        if h == len(counter):
            counter.append(1)
        else:
            counter[h] = 1
        steps += 1 + h  # final write, walk back to cell 0
        # decrement: turn trailing 0s into 1s, then clear the first 1
        h = 0
        while down[h] == 0:
            down[h] = 1
            h += 1
            steps += 2
        if h == len(down) - 1:
            down.pop()  # the top digit goes blank
        else:
            down[h] = 0
        steps += 1 + h
        rounds += 1
    value = sum(b << i for i, b in enumerate(counter))
    return CountResult(steps, value, rounds)


def count_binary_steps(N: int, M: int) -> int:
    return count_binary(N, M).steps
