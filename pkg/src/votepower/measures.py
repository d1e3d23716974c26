"""The three voting-power measures and their supporting machinery.

Each measure assigns every player a weighted sum of per-division efficacy
scores.  The decisiveness measures score 1 exactly when the player could flip
the outcome (with an equal-probability division weight for one, and a
permutation-derived weight for the other), while the recursive measure also
credits partial efficacy through the loyal-children recursion.  All values
are exact rationals.

Every measure reports a YES/NO decomposition: the part of a player's power
accrued in divisions where it votes YES versus NO.  The decisiveness measures
are strategy symmetric (the two parts are always equal); the recursive
measure is not.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from . import engine
from .errors import (
    NotWeightedError,
    TooManyPlayersError,
    WeightSumTooLargeError,
)
from .games import (
    MAX_ENUM_PLAYERS,
    Division,
    SimpleVotingGame,
    Weighted,
    validate,
)
from .rational import decimal6, format_fraction

MAX_ORACLE_PLAYERS = 10
MAX_WEIGHT_SUM = 1_000_000


class Measure(str, Enum):
    PB = "pb"
    SS = "ss"
    RM = "rm"


@dataclass(frozen=True)
class PowerReport:
    """Per-player power under one measure, with its YES/NO decomposition."""

    measure: Measure
    totals: tuple[Fraction, ...]
    yes_powers: tuple[Fraction, ...]
    no_powers: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        assert len(self.totals) == len(self.yes_powers) == len(self.no_powers)
        for t, y, m in zip(self.totals, self.yes_powers, self.no_powers):
            assert t == y + m and y >= 0 and m >= 0

    @property
    def n(self) -> int:
        return len(self.totals)

    def to_rows(self) -> list[dict]:
        """JSON-ready rows, one per player, 1-based, fractions in lowest terms."""
        return [
            {
                "player": i + 1,
                "measure": self.measure.value,
                "total": format_fraction(self.totals[i]),
                "yes": format_fraction(self.yes_powers[i]),
                "no": format_fraction(self.no_powers[i]),
                "decimal": decimal6(self.totals[i]),
            }
            for i in range(self.n)
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_rows(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=["player", "measure", "total", "yes", "no", "decimal"]
        )
        writer.writeheader()
        writer.writerows(self.to_rows())
        return buf.getvalue()


def power_split(report: PowerReport) -> list[tuple[Fraction, Fraction]]:
    """The (YES, NO) power decomposition per player.

    For the decisiveness measures the two sides must coincide (strategy
    symmetry); that invariant is asserted here.
    """
    if report.measure in (Measure.PB, Measure.SS):
        for i, (y, m) in enumerate(zip(report.yes_powers, report.no_powers)):
            assert y == m, f"strategy symmetry violated for player {i + 1}: {y} != {m}"
    return list(zip(report.yes_powers, report.no_powers))


# ---------------------------------------------------------------------------
# Decisiveness
# ---------------------------------------------------------------------------


def is_yes_decisive(game: SimpleVotingGame, player: int, division: Division) -> bool:
    """The player votes YES, the division wins, and its defection would lose."""
    from .games import is_winning

    mask = division.yes_mask
    bit = 1 << player
    return bool(mask & bit) and is_winning(game, mask) and not is_winning(game, mask ^ bit)


def is_no_decisive(game: SimpleVotingGame, player: int, division: Division) -> bool:
    """The player votes NO, the division loses, and its defection would win."""
    from .games import is_winning

    mask = division.yes_mask
    bit = 1 << player
    return not mask & bit and not is_winning(game, mask) and is_winning(game, mask | bit)


def is_decisive(game: SimpleVotingGame, player: int, division: Division) -> bool:
    return is_yes_decisive(game, player, division) or is_no_decisive(game, player, division)


# ---------------------------------------------------------------------------
# The measures
# ---------------------------------------------------------------------------


def _guard(game: SimpleVotingGame, max_players: int | None) -> None:
    validate(game)
    cap = MAX_ENUM_PLAYERS if max_players is None else max_players
    if game.n > cap:
        raise TooManyPlayersError(
            f"n={game.n} exceeds the enumeration cap of {cap} players"
        )


def pb(game: SimpleVotingGame, max_players: int | None = None) -> PowerReport:
    """Decisiveness counting over all divisions, weight 1/2^n each."""
    _guard(game, max_players)
    n = game.n
    win = engine.winning_table(game)
    yes, no = engine.pb_swing_counts(n, win)
    denom = 1 << n
    ys = tuple(Fraction(c, denom) for c in yes)
    ns = tuple(Fraction(c, denom) for c in no)
    return PowerReport(Measure.PB, tuple(y + m for y, m in zip(ys, ns)), ys, ns)


def pb_star(game: SimpleVotingGame, max_players: int | None = None) -> tuple[Fraction, ...]:
    """Shortcut form: YES-decisive divisions only, weight 1/2^(n-1).

    Independent single-sided enumeration; must equal the totals of :func:`pb`.
    """
    _guard(game, max_players)
    from .games import is_winning

    n = game.n
    counts = [0] * n
    for m in range(1 << n):
        if not is_winning(game, m):
            continue
        for i in range(n):
            bit = 1 << i
            if m & bit and not is_winning(game, m ^ bit):
                counts[i] += 1
    denom = 1 << (n - 1)
    return tuple(Fraction(c, denom) for c in counts)


def ss(game: SimpleVotingGame, max_players: int | None = None) -> PowerReport:
    """Decisiveness with permutation-derived division weights.

    The weight of a division, evaluated for player i, is
    (k-1)!(n-k)!/(2 n!) where k counts the voters siding with i there.
    """
    _guard(game, max_players)
    n = game.n
    win = engine.winning_table(game)
    yes, no = engine.ss_swing_counts(n, win)
    fact = [math.factorial(k) for k in range(n + 1)]
    two_nfact = 2 * fact[n]
    ys, ns = [], []
    for i in range(n):
        y = Fraction(0)
        m = Fraction(0)
        for size in range(n + 1):
            if yes[i][size]:
                # voting YES: k equals the YES-set size
                y += yes[i][size] * Fraction(fact[size - 1] * fact[n - size], two_nfact)
            if no[i][size]:
                # voting NO: k equals the NO-set size n - |S|
                m += no[i][size] * Fraction(fact[n - size - 1] * fact[size], two_nfact)
        ys.append(y)
        ns.append(m)
    return PowerReport(
        Measure.SS, tuple(y + m for y, m in zip(ys, ns)), tuple(ys), tuple(ns)
    )


def ss_star(game: SimpleVotingGame, max_players: int | None = None) -> tuple[Fraction, ...]:
    """Shortcut form over YES-decisive divisions, weight (|S|-1)!(n-|S|)!/n!.

    Independent single-sided enumeration; must equal the totals of :func:`ss`.
    """
    _guard(game, max_players)
    from .games import is_winning

    n = game.n
    fact = [math.factorial(k) for k in range(n + 1)]
    totals = [Fraction(0)] * n
    for m in range(1 << n):
        if not is_winning(game, m):
            continue
        size = m.bit_count()
        weight = Fraction(fact[size - 1] * fact[n - size], fact[n])
        for i in range(n):
            bit = 1 << i
            if m & bit and not is_winning(game, m ^ bit):
                totals[i] += weight
    return tuple(totals)


def rm(game: SimpleVotingGame, max_players: int | None = None) -> PowerReport:
    """The recursive measure: expected efficacy over equiprobable divisions."""
    _guard(game, max_players)
    n = game.n
    win = engine.winning_table(game)
    yes_sums, no_sums = engine.rm_alpha_sums(n, win)
    denom = 1 << n
    ys = tuple(s / denom for s in yes_sums)
    ns = tuple(s / denom for s in no_sums)
    return PowerReport(Measure.RM, tuple(y + m for y, m in zip(ys, ns)), ys, ns)


def power(game: SimpleVotingGame, measure: Measure) -> PowerReport:
    """Dispatch to the requested measure (memoized: games are frozen values)."""
    return _power_cached(game, Measure(measure))


@lru_cache(maxsize=8192)
def _power_cached(game: SimpleVotingGame, measure: Measure) -> PowerReport:
    if measure is Measure.PB:
        return pb(game)
    if measure is Measure.SS:
        return ss(game)
    return rm(game)


# ---------------------------------------------------------------------------
# Recursive-measure internals: loyal children, per-division efficacy, oracle
# ---------------------------------------------------------------------------


def loyal_children(game: SimpleVotingGame, division: Division) -> list[Division]:
    """Divisions one vote closer to the minority side with the same outcome."""
    from .games import is_winning

    n = game.n
    m = division.yes_mask
    if is_winning(game, m):
        kids = [m ^ (1 << j) for j in range(n) if m & (1 << j) and is_winning(game, m ^ (1 << j))]
    else:
        kids = [m | (1 << j) for j in range(n) if not m & (1 << j) and not is_winning(game, m | (1 << j))]
    return [Division(k, n) for k in sorted(kids)]


def rm_efficacy(game: SimpleVotingGame, player: int, division: Division) -> Fraction:
    """Degree of efficacy of one player in one division.

    1 when decisive, 0 when unsuccessful, otherwise the average over the
    division's loyal children.  Memoized per call across the recursion.
    """
    validate(game)
    win = engine.winning_table(game)
    n = game.n
    bit = 1 << player
    memo: dict[int, Fraction] = {}

    def score(m: int) -> Fraction:
        got = memo.get(m)
        if got is not None:
            return got
        if win[m]:
            if not m & bit:
                v = Fraction(0)
            elif not win[m ^ bit]:
                v = Fraction(1)
            else:
                kids = [m ^ (1 << j) for j in range(n) if m & (1 << j) and win[m ^ (1 << j)]]
                v = sum(score(k) for k in kids) / len(kids)
        else:
            if m & bit:
                v = Fraction(0)
            elif win[m | bit]:
                v = Fraction(1)
            else:
                kids = [m | (1 << j) for j in range(n) if not m & (1 << j) and not win[m | (1 << j)]]
                v = sum(score(k) for k in kids) / len(kids)
        memo[m] = v
        return v

    return score(division.yes_mask)


def rm_path_oracle(
    game: SimpleVotingGame,
    player: int,
    division: Division,
    side: str | None = None,
) -> Fraction:
    """Efficacy by explicit traversal of the loyal-children DAG.

    Walks every path from the division, weighting each branch uniformly by
    the child count, absorbing 1 where the player is decisive and 0 where it
    is unsuccessful (or no loyal child remains).  No memoization: this is the
    independent cross-check for :func:`rm_efficacy`.  ``side`` may force the
    "yes" or "no" efficacy component; by default the division's own outcome
    picks the side, matching the full efficacy score.
    """
    validate(game)
    if game.n > MAX_ORACLE_PLAYERS:
        raise TooManyPlayersError(
            f"path enumeration refuses n={game.n} > {MAX_ORACLE_PLAYERS}"
        )
    from .games import is_winning

    winning = is_winning(game, division.yes_mask)
    if side == "yes" and not winning:
        return Fraction(0)
    if side == "no" and winning:
        return Fraction(0)

    n = game.n
    bit = 1 << player

    def walk_up(m: int) -> Fraction:  # losing side: add YES votes
        if m & bit:
            return Fraction(0)
        if is_winning(game, m | bit):
            return Fraction(1)
        kids = [m | (1 << j) for j in range(n) if not m & (1 << j) and not is_winning(game, m | (1 << j))]
        if not kids:
            return Fraction(0)
        return sum(walk_up(k) for k in kids) / len(kids)

    def walk_down(m: int) -> Fraction:  # winning side: drop YES votes
        if not m & bit:
            return Fraction(0)
        if not is_winning(game, m ^ bit):
            return Fraction(1)
        kids = [m ^ (1 << j) for j in range(n) if m & (1 << j) and is_winning(game, m ^ (1 << j))]
        if not kids:
            return Fraction(0)
        return sum(walk_down(k) for k in kids) / len(kids)

    if winning:
        return walk_down(division.yes_mask)
    return walk_up(division.yes_mask)


# ---------------------------------------------------------------------------
# Fast paths for weighted games (generating-function dynamic programming)
# ---------------------------------------------------------------------------


def _weighted_rule(game: SimpleVotingGame) -> Weighted:
    if not isinstance(game.rule, Weighted):
        raise NotWeightedError("fast paths need a weighted rule")
    rule = game.rule
    if sum(rule.weights) > MAX_WEIGHT_SUM:
        raise WeightSumTooLargeError(
            f"weight total {sum(rule.weights)} exceeds {MAX_WEIGHT_SUM}"
        )
    return rule


def _swing_weight_counts(rule: Weighted, n: int, player: int) -> list[int]:
    """Count, by coalition size, the other-player coalitions this player swings."""
    w = rule.weights[player]
    hi = rule.quota - 1
    lo = rule.quota - w
    if w == 0 or hi < 0:
        return [0] * n
    # dp[s][t] = number of coalitions of the others with size s and weight t
    dp = [[0] * (hi + 1) for _ in range(n)]
    dp[0][0] = 1
    for j in range(n):
        if j == player:
            continue
        wj = rule.weights[j]
        for s in range(n - 2, -1, -1):
            row = dp[s]
            nxt = dp[s + 1]
            for t in range(hi - wj, -1, -1):
                c = row[t]
                if c:
                    nxt[t + wj] += c
    lo = max(lo, 0)
    return [sum(dp[s][lo : hi + 1]) for s in range(n)]


def pb_fast(game: SimpleVotingGame) -> PowerReport:
    """Weighted-rule power by subset-sum counting; equals :func:`pb` exactly."""
    validate(game)
    rule = _weighted_rule(game)
    n = game.n
    denom = 1 << n
    ys, ns = [], []
    for i in range(n):
        swings = sum(_swing_weight_counts(rule, n, i))
        # every swing coalition S of the others yields one YES-decisive
        # division (S plus i) and one NO-decisive division (S itself)
        ys.append(Fraction(swings, denom))
        ns.append(Fraction(swings, denom))
    return PowerReport(
        Measure.PB, tuple(y + m for y, m in zip(ys, ns)), tuple(ys), tuple(ns)
    )


def ss_fast(game: SimpleVotingGame) -> PowerReport:
    """Weighted-rule power by size-and-weight counting; equals :func:`ss` exactly."""
    validate(game)
    rule = _weighted_rule(game)
    n = game.n
    fact = [math.factorial(k) for k in range(n + 1)]
    ys, ns = [], []
    for i in range(n):
        by_size = _swing_weight_counts(rule, n, i)
        half = Fraction(0)
        for s, count in enumerate(by_size):
            if count:
                half += count * Fraction(fact[s] * fact[n - 1 - s], 2 * fact[n])
        ys.append(half)
        ns.append(half)
    return PowerReport(
        Measure.SS, tuple(y + m for y, m in zip(ys, ns)), tuple(ys), tuple(ns)
    )
