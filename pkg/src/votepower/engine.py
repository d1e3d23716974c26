"""Kernel backend selection.

At import time this module picks the compiled extension (``votepower._core``,
built from Cython) when it is available, and otherwise the pure-Python
kernels.  The compiled kernels use checked 64-bit rational arithmetic and
raise ``OverflowError`` when a value cannot be represented or a size cap is
exceeded; every entry point here catches that and recomputes with the
arbitrary-precision pure path, so results are always exact.

Set the environment variable ``VOTEPOWER_PURE=1`` to force the pure path.
"""

from __future__ import annotations

import os
from fractions import Fraction

from . import _kernels_py as _py
from .games import SimpleVotingGame, Weighted

_core = None
if not os.environ.get("VOTEPOWER_PURE"):
    try:
        from . import _core  # type: ignore[no-redef]
    except ImportError:
        _core = None


def backend_name() -> str:
    return "compiled" if _core is not None else "pure-python"


def winning_table(game: SimpleVotingGame) -> bytearray:
    rule = game.rule
    if isinstance(rule, Weighted):
        if _core is not None:
            try:
                return _core.winning_table_weighted(game.n, rule.quota, list(rule.weights))
            except OverflowError:
                pass
        return _py.winning_table_weighted(game.n, rule.quota, rule.weights)
    if _core is not None:
        try:
            return _core.winning_table_explicit(game.n, list(rule.min_winning))
        except OverflowError:
            pass
    return _py.winning_table_explicit(game.n, rule.min_winning)


def pb_swing_counts(n: int, win: bytearray) -> tuple[list[int], list[int]]:
    if _core is not None:
        try:
            return _core.pb_swing_counts(n, win)
        except OverflowError:
            pass
    return _py.pb_swing_counts(n, win)


def ss_swing_counts(n: int, win: bytearray) -> tuple[list[list[int]], list[list[int]]]:
    if _core is not None:
        try:
            return _core.ss_swing_counts(n, win)
        except OverflowError:
            pass
    return _py.ss_swing_counts(n, win)


def rm_alpha_sums(n: int, win: bytearray) -> tuple[list[Fraction], list[Fraction]]:
    if _core is not None:
        try:
            return _core.rm_alpha_sums(n, win)
        except OverflowError:
            pass
    return _py.rm_alpha_sums(n, win)
