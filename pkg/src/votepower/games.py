"""Simple voting games: representation, validation, and structural transforms.

A game is a player count plus a rule, either weighted (quota, weights) or
explicit (the antichain of minimal winning coalitions).  Coalitions and
divisions are bitmasks: bit ``p`` set means player ``p`` (0-based) votes YES
or belongs to the coalition.  Games are frozen values; every function here is
pure and returns new games.

The monotonicity axiom is structural: a weighted rule is monotone by
construction, and an explicit rule defines "winning" as containing some
member of the stored antichain.  Validation therefore only has to reject
trivial games and non-antichain families.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import (
    EmptyBlocError,
    GameValidationError,
    NotADummyError,
    NotAntichainError,
    NotAPermutationError,
    TrivialGameError,
)

# Hard refusal point for operations that walk all 2^n divisions.  Desk scale:
# fail loudly instead of hanging.
MAX_ENUM_PLAYERS = 24


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(players: Iterable[int]) -> int:
    mask = 0
    for p in players:
        mask |= 1 << p
    return mask


def players_of(mask: int) -> tuple[int, ...]:
    return tuple(p for p in range(mask.bit_length()) if (mask >> p) & 1)


@dataclass(frozen=True)
class Weighted:
    """Quota rule: a coalition wins iff its weight total reaches the quota."""

    quota: int
    weights: tuple[int, ...]


@dataclass(frozen=True)
class Explicit:
    """Rule given by the antichain of minimal winning coalitions (bitmasks)."""

    min_winning: tuple[int, ...]


@dataclass(frozen=True)
class SimpleVotingGame:
    """A binary voting game on players ``0..n-1``."""

    n: int
    rule: Weighted | Explicit


@dataclass(frozen=True)
class Division:
    """A complete vote configuration: ``yes_mask`` holds the YES voters.

    The NO voters are always the complement within ``0..n-1``.
    """

    yes_mask: int
    n: int

    def yes_set(self) -> tuple[int, ...]:
        return players_of(self.yes_mask)

    def no_set(self) -> tuple[int, ...]:
        return players_of(full_mask(self.n) & ~self.yes_mask)

    def votes_yes(self, player: int) -> bool:
        return bool((self.yes_mask >> player) & 1)


def all_divisions(n: int) -> Iterator[Division]:
    for mask in range(1 << n):
        yield Division(mask, n)


def weighted_game(quota: int, weights: Iterable[int]) -> SimpleVotingGame:
    """Build and validate a weighted game like {quota; w1, w2, ...}."""
    ws = tuple(int(w) for w in weights)
    game = SimpleVotingGame(len(ws), Weighted(int(quota), ws))
    return validate(game)


def explicit_game(n: int, min_winning: Iterable[Iterable[int]]) -> SimpleVotingGame:
    """Build and validate a game from minimal winning coalitions (0-based players)."""
    masks = tuple(sorted(mask_of(c) for c in min_winning))
    return validate(SimpleVotingGame(n, Explicit(masks)))


def explicit_game_from_masks(n: int, masks: Iterable[int]) -> SimpleVotingGame:
    return validate(SimpleVotingGame(n, Explicit(tuple(sorted(masks)))))


def validate(game: SimpleVotingGame) -> SimpleVotingGame:
    """Check the game invariants; return the game or raise.

    Raises TrivialGameError when the empty coalition wins or the grand
    coalition loses, NotAntichainError when an explicit family contains a
    comparable pair, and GameValidationError for malformed data.
    """
    n = game.n
    if n < 1:
        raise GameValidationError(f"a game needs at least one player, got n={n}")
    rule = game.rule
    if isinstance(rule, Weighted):
        if len(rule.weights) != n:
            raise GameValidationError(
                f"expected {n} weights, got {len(rule.weights)}"
            )
        if any(w < 0 for w in rule.weights):
            raise GameValidationError("weights must be nonnegative")
        if rule.quota <= 0:
            raise TrivialGameError("quota must be positive, else the empty coalition wins")
        if rule.quota > sum(rule.weights):
            raise TrivialGameError("quota exceeds the total weight, so no coalition wins")
        return game
    if isinstance(rule, Explicit):
        masks = rule.min_winning
        if not masks:
            raise TrivialGameError("no winning coalitions: the grand coalition loses")
        for m in masks:
            if m == 0:
                raise TrivialGameError("the empty coalition is listed as winning")
            if m < 0 or m > full_mask(n):
                raise GameValidationError(f"coalition mask {m:#x} is out of range for n={n}")
        if len(set(masks)) != len(masks):
            raise NotAntichainError("duplicate minimal winning coalitions")
        for a in masks:
            for b in masks:
                if a != b and a & b == a:
                    raise NotAntichainError(
                        f"coalition {players_of(a)} is contained in {players_of(b)}"
                    )
        return game
    raise GameValidationError(f"unknown rule type: {type(rule).__name__}")


def is_winning(game: SimpleVotingGame, coalition: int) -> bool:
    """Is the coalition (bitmask) winning?"""
    rule = game.rule
    if isinstance(rule, Weighted):
        total = 0
        m = coalition
        while m:
            low = m & -m
            total += rule.weights[low.bit_length() - 1]
            m ^= low
        return total >= rule.quota
    return any(mw & coalition == mw for mw in rule.min_winning)


def wins(game: SimpleVotingGame, division: Division) -> bool:
    return is_winning(game, division.yes_mask)


def yes_blockers(game: SimpleVotingGame) -> frozenset[int]:
    """Players present in every winning coalition (can veto a YES outcome)."""
    rule = game.rule
    if isinstance(rule, Weighted):
        total = sum(rule.weights)
        return frozenset(
            b for b in range(game.n) if total - rule.weights[b] < rule.quota
        )
    inter = full_mask(game.n)
    for m in rule.min_winning:
        inter &= m
    return frozenset(players_of(inter))


def no_blockers(game: SimpleVotingGame) -> frozenset[int]:
    """Players whose lone YES already wins (can veto a NO outcome)."""
    rule = game.rule
    if isinstance(rule, Weighted):
        return frozenset(j for j in range(game.n) if rule.weights[j] >= rule.quota)
    singles = {m.bit_length() - 1 for m in rule.min_winning if m & (m - 1) == 0}
    return frozenset(singles)


def is_dummy(game: SimpleVotingGame, player: int) -> bool:
    """True iff the player is decisive in none of the 2^n divisions."""
    rule = game.rule
    if isinstance(rule, Explicit):
        bit = 1 << player
        return all(not m & bit for m in rule.min_winning)
    w = rule.weights[player]
    if w == 0:
        return True
    # A swing exists iff some coalition of the others has weight in
    # [quota - w, quota - 1].  Subset-sum reachability as a bitset integer.
    hi = rule.quota - 1
    lo = max(rule.quota - w, 0)
    if lo > hi:
        return True
    reach = 1
    cap = (1 << (hi + 1)) - 1
    for j, wj in enumerate(rule.weights):
        if j != player and wj:
            reach |= reach << wj
            reach &= cap
    window = (reach >> lo) & ((1 << (hi - lo + 1)) - 1)
    return window == 0


def dummies(game: SimpleVotingGame) -> frozenset[int]:
    return frozenset(p for p in range(game.n) if is_dummy(game, p))


def min_winning_coalitions(game: SimpleVotingGame) -> tuple[int, ...]:
    """The antichain of minimal winning coalitions, as sorted bitmasks."""
    rule = game.rule
    if isinstance(rule, Explicit):
        return tuple(sorted(rule.min_winning))
    _check_enum(game.n)
    out = []
    for m in range(1, 1 << game.n):
        if is_winning(game, m) and all(
            not is_winning(game, m & ~(1 << b)) for b in players_of(m)
        ):
            out.append(m)
    return tuple(out)


def smallest_winning_size(game: SimpleVotingGame) -> int:
    """Cardinality of the smallest winning coalition."""
    rule = game.rule
    if isinstance(rule, Explicit):
        return min(m.bit_count() for m in rule.min_winning)
    total = 0
    for k, w in enumerate(sorted(rule.weights, reverse=True), start=1):
        total += w
        if total >= rule.quota:
            return k
    raise GameValidationError("unvalidated game: no winning coalition")


def largest_losing_size(game: SimpleVotingGame) -> int:
    """Cardinality of the largest losing coalition."""
    rule = game.rule
    if isinstance(rule, Weighted):
        total, size = 0, 0
        for w in sorted(rule.weights):
            if total + w >= rule.quota:
                break
            total += w
            size += 1
        return size
    n = game.n
    _check_enum(n)
    best = 0
    for m in range(1 << n):
        if m.bit_count() > best and not is_winning(game, m):
            best = m.bit_count()
    return best


def same_winning_family(a: SimpleVotingGame, b: SimpleVotingGame) -> bool:
    """Do two games have identical winning coalitions (same player count)?"""
    return a.n == b.n and min_winning_coalitions(a) == min_winning_coalitions(b)


def _check_enum(n: int, limit: int | None = None) -> None:
    from .errors import TooManyPlayersError

    cap = MAX_ENUM_PLAYERS if limit is None else limit
    if n > cap:
        raise TooManyPlayersError(
            f"refusing to enumerate 2^{n} coalitions (cap {cap}); raise the cap explicitly"
        )


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


def donate_votes(game: SimpleVotingGame, donor: int, to: int) -> SimpleVotingGame:
    """Full vote donation from ``donor`` to ``to`` on the same player set.

    The donated game counts the donor's vote as cast by the recipient, which
    renders the donor a dummy: a coalition with the recipient wins iff the
    original coalition plus the donor won, and a coalition without the
    recipient wins iff it wins with the donor removed.
    """
    if donor == to:
        return game
    _check_player(game, donor)
    _check_player(game, to)
    rule = game.rule
    if isinstance(rule, Weighted):
        ws = list(rule.weights)
        ws[to] += ws[donor]
        ws[donor] = 0
        return SimpleVotingGame(game.n, Weighted(rule.quota, tuple(ws)))
    dbit, tbit = 1 << donor, 1 << to
    candidates = {(m & ~dbit) | tbit for m in rule.min_winning}
    candidates |= {m for m in rule.min_winning if not m & (dbit | tbit)}
    return SimpleVotingGame(game.n, Explicit(_prune_to_antichain(candidates)))


def _prune_to_antichain(masks: Iterable[int]) -> tuple[int, ...]:
    ms = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ms:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class BlocResult:
    """Outcome of bloc formation: the reduced game plus index bookkeeping."""

    game: SimpleVotingGame
    old_to_new: Mapping[int, int]
    lead: int  # lead player's index in the new game


def form_bloc(
    game: SimpleVotingGame, members: Iterable[int], lead: int | None = None
) -> BlocResult:
    """Merge a bloc by vote donation, then delete the (now dummy) donors.

    Every non-lead member donates to the lead, in ascending index order; the
    final game does not depend on that order.  Surviving players are compacted
    to ``0..n-|I|`` preserving relative order, and the old->new index map is
    returned with the result.
    """
    mset = sorted(set(members))
    if not mset:
        raise EmptyBlocError("a bloc needs at least one member")
    for p in mset:
        _check_player(game, p)
    if lead is None:
        lead = mset[0]
    elif lead not in mset:
        raise EmptyBlocError(f"lead {lead} is not a bloc member")
    donors = [p for p in mset if p != lead]
    g = game
    for donor in donors:
        g = donate_votes(g, donor, lead)
    old_to_new = {p: p for p in range(game.n)}
    for donor in sorted(donors, reverse=True):
        g, shift = delete_dummy(g, old_to_new[donor])
        del old_to_new[donor]
        old_to_new = {old: shift[cur] for old, cur in old_to_new.items()}
    return BlocResult(g, old_to_new, old_to_new[lead])


def delete_dummy(
    game: SimpleVotingGame, player: int
) -> tuple[SimpleVotingGame, dict[int, int]]:
    """Remove a dummy player; returns the reduced game and the old->new map."""
    _check_player(game, player)
    if not is_dummy(game, player):
        raise NotADummyError(f"player {player} can swing a division")
    old_to_new = {
        p: (p if p < player else p - 1) for p in range(game.n) if p != player
    }
    rule = game.rule
    if isinstance(rule, Weighted):
        ws = tuple(w for p, w in enumerate(rule.weights) if p != player)
        return SimpleVotingGame(game.n - 1, Weighted(rule.quota, ws)), old_to_new
    low = (1 << player) - 1
    masks = tuple(sorted((m & low) | ((m >> 1) & ~low) for m in rule.min_winning))
    return SimpleVotingGame(game.n - 1, Explicit(masks)), old_to_new


def add_yes_blocker(game: SimpleVotingGame) -> SimpleVotingGame:
    """Append a player (index n) that every winning coalition must include."""
    rule = game.rule
    n = game.n
    if isinstance(rule, Weighted):
        # Heavy enough that nothing wins without it, yet its vote alone adds
        # nothing: shift the quota up by its weight.
        wb = sum(rule.weights) - rule.quota + 1
        return SimpleVotingGame(n + 1, Weighted(rule.quota + wb, rule.weights + (wb,)))
    bit = 1 << n
    return SimpleVotingGame(n + 1, Explicit(tuple(m | bit for m in rule.min_winning)))


def add_no_blocker(game: SimpleVotingGame) -> SimpleVotingGame:
    """Append a player (index n) whose YES vote alone forces a win."""
    rule = game.rule
    n = game.n
    if isinstance(rule, Weighted):
        return SimpleVotingGame(n + 1, Weighted(rule.quota, rule.weights + (rule.quota,)))
    bit = 1 << n
    return SimpleVotingGame(n + 1, Explicit(tuple(sorted(rule.min_winning + (bit,)))))


def permute_players(game: SimpleVotingGame, perm: Iterable[int]) -> SimpleVotingGame:
    """Relabel players: player i of the input becomes player perm[i]."""
    p = tuple(perm)
    if sorted(p) != list(range(game.n)):
        raise NotAPermutationError(f"{p} is not a permutation of 0..{game.n - 1}")
    rule = game.rule
    if isinstance(rule, Weighted):
        ws = [0] * game.n
        for i, w in enumerate(rule.weights):
            ws[p[i]] = w
        return SimpleVotingGame(game.n, Weighted(rule.quota, tuple(ws)))
    masks = tuple(sorted(permute_mask(m, p) for m in rule.min_winning))
    return SimpleVotingGame(game.n, Explicit(masks))


def permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i in players_of(mask):
        out |= 1 << perm[i]
    return out


def _check_player(game: SimpleVotingGame, player: int) -> None:
    if not 0 <= player < game.n:
        raise GameValidationError(f"player {player} out of range for n={game.n}")


# ---------------------------------------------------------------------------
# Game files (JSON, 1-based player lists)
# ---------------------------------------------------------------------------


def game_to_dict(game: SimpleVotingGame) -> dict:
    rule = game.rule
    if isinstance(rule, Weighted):
        body = {"weighted": {"quota": rule.quota, "weights": list(rule.weights)}}
    else:
        body = {
            "explicit": {
                "min_winning": [
                    [p + 1 for p in players_of(m)] for m in sorted(rule.min_winning)
                ]
            }
        }
    return {"n": game.n, "rule": body}


def game_from_dict(data: Mapping) -> SimpleVotingGame:
    try:
        n = int(data["n"])
        rule = data["rule"]
        if "weighted" in rule:
            w = rule["weighted"]
            game = SimpleVotingGame(
                n, Weighted(int(w["quota"]), tuple(int(x) for x in w["weights"]))
            )
        elif "explicit" in rule:
            coalitions = rule["explicit"]["min_winning"]
            masks = tuple(sorted(mask_of(int(p) - 1 for p in c) for c in coalitions))
            game = SimpleVotingGame(n, Explicit(masks))
        else:
            raise GameValidationError(f"unknown rule keys: {sorted(rule)}")
    except (KeyError, TypeError, ValueError) as exc:
        raise GameValidationError(f"malformed game object: {exc}") from exc
    return validate(game)


def save_game(game: SimpleVotingGame, path: str | Path) -> None:
    Path(path).write_text(json.dumps(game_to_dict(game), indent=2) + "\n")


def load_game(path: str | Path) -> SimpleVotingGame:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GameValidationError(f"not a JSON game file: {exc}") from exc
    return game_from_dict(data)


def describe(game: SimpleVotingGame) -> str:
    """One-line human description of the rule."""
    rule = game.rule
    if isinstance(rule, Weighted):
        return f"{{{rule.quota}; {', '.join(map(str, rule.weights))}}}"
    sets = ",".join(
        "{" + ",".join(str(p + 1) for p in players_of(m)) + "}"
        for m in sorted(rule.min_winning)
    )
    return f"minimal winning: {sets}"
