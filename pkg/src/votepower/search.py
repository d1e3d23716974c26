"""Game spaces, the built-in corpus, and counterexample search.

Spaces enumerate validated games in a deterministic order: the exhaustive
space walks every monotone nontrivial game on n players (as upsets of the
subset lattice, emitted by antichain size then lexicographically), the grid
walks canonical weighted games, and the random space draws seeded weighted
games reproducibly.  The searcher scans a space for the first failing
instance of a postulate and packages it with enough context to replay.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import SpaceTooLargeError
from .games import (
    Explicit,
    SimpleVotingGame,
    game_from_dict,
    game_to_dict,
    validate,
    weighted_game,
)
from .measures import Measure
from .postulates import FAILS, Postulate, Verdict, check, qualifier_space
from .rational import format_fraction

MAX_EXHAUSTIVE_PLAYERS = 5
MAX_GRID_GAMES = 500_000


def unanimity(n: int) -> SimpleVotingGame:
    """Only the grand coalition wins."""
    return weighted_game(n, [1] * n)


def dictator(n: int, player: int = 0) -> SimpleVotingGame:
    """Exactly the coalitions containing the dictator win."""
    return weighted_game(1, [1 if p == player else 0 for p in range(n)])


def paper_corpus() -> dict[str, SimpleVotingGame]:
    """The named games every reference value in the test suite is pinned to."""
    return {
        "unanimity3": unanimity(3),
        "g_311": weighted_game(3, [2, 1, 1]),
        "g_11222": weighted_game(2, [1, 1, 2, 2, 2]),
        "g_8_2115": weighted_game(8, [2, 1, 1, 5]),
        "dictator1": dictator(1),
    }


def corpus_game(name: str) -> SimpleVotingGame:
    """Resolve a corpus name, including parametric unanimityN / dictatorN."""
    games = paper_corpus()
    if name in games:
        return games[name]
    for prefix, builder in (("unanimity", unanimity), ("dictator", dictator)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return builder(int(name[len(prefix):]))
    raise KeyError(f"unknown corpus game {name!r}; known: {', '.join(sorted(games))}")


# ---------------------------------------------------------------------------
# Spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExhaustiveMonotone:
    """Every monotone nontrivial game on n players (n <= 5)."""

    n: int


@dataclass(frozen=True)
class WeightedGrid:
    """All canonical weighted games: nonincreasing positive weights, all quotas."""

    n: int
    max_weight: int
    quotas: tuple[int, ...] | None = None


@dataclass(frozen=True)
class RandomWeighted:
    """Seeded random weighted games; identical parameters give identical streams."""

    n: int
    max_weight: int
    count: int
    seed: int


GameSpace = ExhaustiveMonotone | WeightedGrid | RandomWeighted


def _upset_antichains(n: int) -> list[tuple[int, ...]]:
    """Minimal antichains of all nontrivial upsets of the n-player subset lattice."""
    size = 1 << n
    order = sorted(range(size), key=lambda m: (-m.bit_count(), m))
    covers = [
        [m | (1 << b) for b in range(n) if not (m >> b) & 1] for m in range(size)
    ]
    member = bytearray(size)
    found: list[tuple[int, ...]] = []

    def emit() -> None:
        if member[0] or not member[size - 1]:
            return  # trivial: everything wins, or nothing does
        mins = tuple(
            m
            for m in range(size)
            if member[m]
            and all(not member[m ^ (1 << b)] for b in range(n) if (m >> b) & 1)
        )
        found.append(mins)

    def rec(k: int) -> None:
        if k == size:
            emit()
            return
        m = order[k]
        member[m] = 0
        rec(k + 1)
        if all(member[c] for c in covers[m]):
            member[m] = 1
            rec(k + 1)
            member[m] = 0

    rec(0)
    found.sort(key=lambda mins: (len(mins), mins))
    return found


def enumerate_games(space: GameSpace) -> Iterator[SimpleVotingGame]:
    """Yield the space's games in its canonical deterministic order."""
    if isinstance(space, ExhaustiveMonotone):
        if not 1 <= space.n <= MAX_EXHAUSTIVE_PLAYERS:
            raise SpaceTooLargeError(
                f"exhaustive enumeration supports 1..{MAX_EXHAUSTIVE_PLAYERS} players"
            )
        for mins in _upset_antichains(space.n):
            yield validate(SimpleVotingGame(space.n, Explicit(mins)))
        return
    if isinstance(space, WeightedGrid):
        if space.n < 1 or space.max_weight < 1:
            raise SpaceTooLargeError("grid needs n >= 1 and max_weight >= 1")
        vectors = list(
            itertools.combinations_with_replacement(
                range(space.max_weight, 0, -1), space.n
            )
        )
        total = sum(
            len(space.quotas) if space.quotas else sum(v) for v in vectors
        )
        if total > MAX_GRID_GAMES:
            raise SpaceTooLargeError(f"grid would contain {total} games (cap {MAX_GRID_GAMES})")
        for weights in vectors:
            quota_range = space.quotas or range(1, sum(weights) + 1)
            for quota in quota_range:
                if 1 <= quota <= sum(weights):
                    yield weighted_game(quota, weights)
        return
    if isinstance(space, RandomWeighted):
        rng = random.Random(space.seed)
        for _ in range(space.count):
            weights = tuple(rng.randint(1, space.max_weight) for _ in range(space.n))
            quota = rng.randint(1, sum(weights))
            yield weighted_game(quota, weights)
        return
    raise TypeError(f"unknown space {space!r}")


# ---------------------------------------------------------------------------
# Counterexample search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleReport:
    """A replayable first-found postulate violation."""

    postulate: Postulate
    measure: Measure
    game: SimpleVotingGame
    qualifier: tuple
    lhs: Fraction
    rhs: Fraction
    relation: str
    games_tested: int
    instances_tested: int
    elapsed_seconds: float

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "postulate": self.postulate.value,
                "measure": self.measure.value,
                "game": game_to_dict(self.game),
                "qualifier": _qualifier_to_json(self.qualifier),
                "lhs": format_fraction(self.lhs),
                "rhs": format_fraction(self.rhs),
                "relation": self.relation,
                "games_tested": self.games_tested,
                "instances_tested": self.instances_tested,
                "elapsed_seconds": round(self.elapsed_seconds, 3),
            }
        )


@dataclass(frozen=True)
class NoneFound:
    """The space was scanned without finding a violation."""

    games_tested: int
    instances_tested: int
    elapsed_seconds: float
    exhausted: bool


def _qualifier_to_json(qualifier: tuple):
    if not qualifier:
        return None
    kind = qualifier[0]
    if kind == "bloc":
        return {"bloc": [p + 1 for p in qualifier[1]]}
    if kind == "pair":
        return {"pair": [qualifier[1] + 1, qualifier[2] + 1]}
    if kind == "perm":
        return {"perm": [p + 1 for p in qualifier[1]]}
    return list(qualifier)


def find_counterexample(
    space: GameSpace,
    measure: Measure,
    postulate: Postulate,
    bloc_cap: int | None = None,
    max_games: int | None = None,
) -> CounterexampleReport | NoneFound:
    """Scan the space in order; return the first failing instance, if any."""
    measure = Measure(measure)
    postulate = Postulate(postulate)
    start = time.perf_counter()
    games_tested = 0
    instances_tested = 0
    exhausted = True
    for game in enumerate_games(space):
        if max_games is not None and games_tested >= max_games:
            exhausted = False
            break
        games_tested += 1
        for qualifier in qualifier_space(game, postulate, bloc_cap):
            instances_tested += 1
            verdict = check(game, measure, postulate, qualifier)
            if verdict.status == FAILS:
                witness = verdict.witness or {}
                return CounterexampleReport(
                    postulate=postulate,
                    measure=measure,
                    game=game,
                    qualifier=qualifier,
                    lhs=witness["lhs"],
                    rhs=witness["rhs"],
                    relation=witness.get("relation", "<="),
                    games_tested=games_tested,
                    instances_tested=instances_tested,
                    elapsed_seconds=time.perf_counter() - start,
                )
    return NoneFound(
        games_tested, instances_tested, time.perf_counter() - start, exhausted
    )


def replay(report: CounterexampleReport) -> Verdict:
    """Re-run the reported check; must fail with the identical fractions."""
    return check(report.game, report.measure, report.postulate, report.qualifier)


def load_report_line(line: str) -> Verdict:
    """Replay a JSONL report line produced by :meth:`CounterexampleReport.to_json_line`."""
    data = json.loads(line)
    game = game_from_dict(data["game"])
    qual = data["qualifier"]
    if qual is None:
        qualifier: tuple = ()
    elif "bloc" in qual:
        qualifier = ("bloc", tuple(p - 1 for p in qual["bloc"]))
    elif "pair" in qual:
        qualifier = ("pair", qual["pair"][0] - 1, qual["pair"][1] - 1)
    else:
        qualifier = ("perm", tuple(p - 1 for p in qual["perm"]))
    return check(game, Measure(data["measure"]), Postulate(data["postulate"]), qualifier)
