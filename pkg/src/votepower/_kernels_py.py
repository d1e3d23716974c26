"""Pure-Python division-lattice kernels.

Reference implementations of the hot sweeps: winning-table construction,
swing counting for the decisiveness measures, and the bottom-up efficacy
recursion for the recursive measure.  Arbitrary-precision `Fraction`
arithmetic throughout; the compiled twin in ``_core`` must match these
bit for bit wherever it does not overflow.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def winning_table_weighted(n: int, quota: int, weights: Sequence[int]) -> bytearray:
    size = 1 << n
    win = bytearray(size)
    sums = [0] * size
    for m in range(1, size):
        low = m & -m
        sums[m] = sums[m ^ low] + weights[low.bit_length() - 1]
        if sums[m] >= quota:
            win[m] = 1
    if quota <= 0:
        win[0] = 1
    return win


def winning_table_explicit(n: int, min_masks: Sequence[int]) -> bytearray:
    size = 1 << n
    win = bytearray(size)
    for m in min_masks:
        win[m] = 1
    for m in range(size):
        if not win[m]:
            mm = m
            while mm:
                low = mm & -mm
                if win[m ^ low]:
                    win[m] = 1
                    break
                mm ^= low
    return win


def pb_swing_counts(n: int, win: bytearray) -> tuple[list[int], list[int]]:
    """Per player: number of YES-decisive and NO-decisive divisions."""
    yes = [0] * n
    no = [0] * n
    for m in range(1 << n):
        w = win[m]
        for i in range(n):
            bit = 1 << i
            if m & bit:
                if w and not win[m ^ bit]:
                    yes[i] += 1
            elif not w and win[m | bit]:
                no[i] += 1
    return yes, no


def ss_swing_counts(
    n: int, win: bytearray
) -> tuple[list[list[int]], list[list[int]]]:
    """Per player and per YES-set size: decisive-division counts by side."""
    yes = [[0] * (n + 1) for _ in range(n)]
    no = [[0] * (n + 1) for _ in range(n)]
    for m in range(1 << n):
        w = win[m]
        size = m.bit_count()
        for i in range(n):
            bit = 1 << i
            if m & bit:
                if w and not win[m ^ bit]:
                    yes[i][size] += 1
            elif not w and win[m | bit]:
                no[i][size] += 1
    return yes, no


def rm_alpha_table(n: int, win: bytearray, player: int) -> list[Fraction]:
    """Efficacy score of one player at every division (indexed by YES mask)."""
    size = 1 << n
    alpha = [Fraction(0)] * size
    bit = 1 << player
    for m in _winning_ascending(n, win):
        if m & bit:
            if not win[m ^ bit]:
                alpha[m] = Fraction(1)
            else:
                kids = _loyal_below(n, win, m)
                alpha[m] = sum(alpha[k] for k in kids) / len(kids)
    for m in _losing_descending(n, win):
        if not m & bit:
            if win[m | bit]:
                alpha[m] = Fraction(1)
            else:
                kids = _loyal_above(n, win, m)
                alpha[m] = sum(alpha[k] for k in kids) / len(kids)
    return alpha


def rm_alpha_sums(
    n: int, win: bytearray
) -> tuple[list[Fraction], list[Fraction]]:
    """Per player: sum of efficacy scores over YES divisions and NO divisions."""
    size = 1 << n
    alpha = [[Fraction(0)] * n for _ in range(size)]
    for m in _winning_ascending(n, win):
        kids = _loyal_below(n, win, m)
        row = alpha[m]
        for i in range(n):
            bit = 1 << i
            if not m & bit:
                continue  # votes NO in a winning division: unsuccessful
            if not win[m ^ bit]:
                row[i] = Fraction(1)
            else:
                # not decisive, so m minus i is itself a loyal child
                row[i] = sum(alpha[k][i] for k in kids) / len(kids)
    for m in _losing_descending(n, win):
        kids = _loyal_above(n, win, m)
        row = alpha[m]
        for i in range(n):
            bit = 1 << i
            if m & bit:
                continue
            if win[m | bit]:
                row[i] = Fraction(1)
            else:
                row[i] = sum(alpha[k][i] for k in kids) / len(kids)
    yes_sums = [Fraction(0)] * n
    no_sums = [Fraction(0)] * n
    for m in range(size):
        row = alpha[m]
        for i in range(n):
            if (m >> i) & 1:
                yes_sums[i] += row[i]
            else:
                no_sums[i] += row[i]
    return yes_sums, no_sums


def _by_popcount(n: int) -> list[list[int]]:
    levels: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(1 << n):
        levels[m.bit_count()].append(m)
    return levels


def _winning_ascending(n: int, win: bytearray) -> list[int]:
    # children of a winning division drop one YES vote, so fill small first
    return [m for level in _by_popcount(n) for m in level if win[m]]


def _losing_descending(n: int, win: bytearray) -> list[int]:
    # children of a losing division add one YES vote, so fill large first
    return [m for level in reversed(_by_popcount(n)) for m in level if not win[m]]


def _loyal_below(n: int, win: bytearray, m: int) -> list[int]:
    return [m ^ (1 << j) for j in range(n) if (m >> j) & 1 and win[m ^ (1 << j)]]


def _loyal_above(n: int, win: bytearray, m: int) -> list[int]:
    return [m | (1 << j) for j in range(n) if not (m >> j) & 1 and not win[m | (1 << j)]]
