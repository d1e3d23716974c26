"""Game representation, validation, and transform tests.

Derived expectations are checked against brute-force re-derivations that use
nothing but ``is_winning`` over all coalitions.
"""

from __future__ import annotations

import random

import pytest

import votepower as vp
from votepower.errors import (
    EmptyBlocError,
    GameValidationError,
    NotADummyError,
    NotAntichainError,
    NotAPermutationError,
    TrivialGameError,
)
from votepower.games import full_mask, mask_of
from votepower.search import ExhaustiveMonotone, enumerate_games


def brute_yes_blockers(game):
    n = game.n
    return {
        b
        for b in range(n)
        if all(
            (m >> b) & 1 for m in range(1 << n) if vp.is_winning(game, m)
        )
    }


def brute_no_blockers(game):
    n = game.n
    return {
        j
        for j in range(n)
        if all(vp.is_winning(game, m) for m in range(1 << n) if (m >> j) & 1)
    }


def brute_is_dummy(game, i):
    n = game.n
    bit = 1 << i
    return all(
        vp.is_winning(game, m) == vp.is_winning(game, m | bit)
        for m in range(1 << n)
        if not m & bit
    )


def random_weighted(rng, n, max_weight=5):
    weights = [rng.randint(0, max_weight) for _ in range(n)]
    if sum(weights) == 0:
        weights[0] = 1
    quota = rng.randint(1, sum(weights))
    return vp.weighted_game(quota, weights)


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def test_validate_accepts_paper_games():
    vp.weighted_game(3, [2, 1, 1])
    vp.weighted_game(2, [1, 1, 2, 2, 2])
    vp.explicit_game(3, [[0, 1], [0, 2]])


def test_validate_rejects_trivial_games():
    with pytest.raises(TrivialGameError):
        vp.weighted_game(0, [1, 1])
    with pytest.raises(TrivialGameError):
        vp.weighted_game(5, [1, 1])
    with pytest.raises(TrivialGameError):
        vp.explicit_game(2, [])
    with pytest.raises(TrivialGameError):
        vp.explicit_game(2, [[]])


def test_validate_rejects_non_antichain():
    with pytest.raises(NotAntichainError):
        vp.explicit_game(2, [[0], [0, 1]])
    with pytest.raises(NotAntichainError):
        vp.explicit_game(2, [[0], [0]])


def test_validate_rejects_malformed():
    with pytest.raises(GameValidationError):
        vp.validate(vp.SimpleVotingGame(0, vp.Weighted(1, ())))
    with pytest.raises(GameValidationError):
        vp.weighted_game(1, [1, -1])
    with pytest.raises(GameValidationError):
        vp.validate(vp.SimpleVotingGame(2, vp.Explicit((8,))))


def test_is_winning_examples():
    g = vp.weighted_game(3, [2, 1, 1])
    assert vp.is_winning(g, mask_of([0, 1]))
    assert not vp.is_winning(g, mask_of([1, 2]))  # weight 1+1 below quota 3
    for game in (g, vp.explicit_game(3, [[0, 1], [0, 2]])):
        assert not vp.is_winning(game, 0)
        assert vp.is_winning(game, full_mask(game.n))


def test_monotonicity_is_structural():
    rng = random.Random(5)
    games = list(enumerate_games(ExhaustiveMonotone(3)))
    games += [random_weighted(rng, 8) for _ in range(20)]
    games.append(random_weighted(rng, 12))
    for game in games:
        n = game.n
        for m in range(1 << n):
            if vp.is_winning(game, m):
                for b in range(n):
                    assert vp.is_winning(game, m | (1 << b))


# ---------------------------------------------------------------------------
# Blockers and dummies
# ---------------------------------------------------------------------------


def test_yes_blockers_examples():
    assert vp.yes_blockers(vp.weighted_game(3, [2, 1, 1])) == {0}
    assert vp.yes_blockers(vp.weighted_game(3, [1, 1, 1])) == {0, 1, 2}
    assert vp.yes_blockers(vp.weighted_game(2, [1, 1, 2, 2, 2])) == frozenset()


def test_no_blockers_examples():
    dictator = vp.weighted_game(1, [1, 0, 0])
    assert vp.no_blockers(dictator) == {0}
    assert vp.yes_blockers(dictator) == {0}
    assert vp.no_blockers(vp.weighted_game(2, [1, 1, 2, 2, 2])) == {2, 3, 4}
    assert vp.no_blockers(vp.weighted_game(3, [1, 1, 1])) == frozenset()


def test_blockers_against_brute_force():
    rng = random.Random(11)
    games = list(enumerate_games(ExhaustiveMonotone(4)))
    games += [random_weighted(rng, rng.randint(2, 10)) for _ in range(30)]
    games.append(random_weighted(rng, 12))
    for game in games:
        assert vp.yes_blockers(game) == brute_yes_blockers(game)
        assert vp.no_blockers(game) == brute_no_blockers(game)


def test_is_dummy_examples():
    g = vp.weighted_game(3, [3, 1])
    assert vp.is_dummy(g, 1)
    assert not vp.is_dummy(g, 0)
    assert not vp.is_dummy(vp.weighted_game(3, [2, 1, 1]), 1)
    dictator = vp.weighted_game(1, [1, 0, 0])
    assert vp.is_dummy(dictator, 1) and vp.is_dummy(dictator, 2)


def test_is_dummy_against_brute_force():
    rng = random.Random(13)
    games = list(enumerate_games(ExhaustiveMonotone(4)))
    games += [random_weighted(rng, rng.randint(2, 10)) for _ in range(30)]
    for game in games:
        for i in range(game.n):
            assert vp.is_dummy(game, i) == brute_is_dummy(game, i)


# ---------------------------------------------------------------------------
# Vote donation and bloc formation
# ---------------------------------------------------------------------------


def donation_rules_hold(game, donor, lead):
    donated = vp.donate_votes(game, donor, lead)
    dbit, lbit = 1 << donor, 1 << lead
    rest = full_mask(game.n) & ~(dbit | lbit)
    s = rest
    while True:
        both = s | dbit | lbit
        assert vp.is_winning(donated, both) == vp.is_winning(game, both)
        assert vp.is_winning(donated, s | lbit) == vp.is_winning(game, both)
        assert vp.is_winning(donated, s | dbit) == vp.is_winning(game, s)
        assert vp.is_winning(donated, s) == vp.is_winning(game, s)
        if s == 0:
            return
        s = (s - 1) & rest


def test_donation_membership_rules():
    rng = random.Random(17)
    games = list(enumerate_games(ExhaustiveMonotone(3)))
    games += list(enumerate_games(ExhaustiveMonotone(4)))
    games.append(random_weighted(rng, 10))
    for game in games:
        for donor in range(game.n):
            for lead in range(game.n):
                if donor != lead:
                    donation_rules_hold(game, donor, lead)


def test_donation_makes_donor_a_dummy():
    for game in enumerate_games(ExhaustiveMonotone(3)):
        donated = vp.donate_votes(game, 2, 0)
        assert vp.is_dummy(donated, 2)


def test_form_bloc_examples():
    g = vp.weighted_game(3, [2, 1, 1])
    res = vp.form_bloc(g, [0, 1])
    assert res.game.n == 2
    assert vp.yes_blockers(res.game) == vp.no_blockers(res.game) == {res.lead}
    assert res.old_to_new == {0: 0, 2: 1}

    res = vp.form_bloc(vp.weighted_game(3, [1, 1, 1]), [0, 1, 2])
    assert res.game.n == 1 and res.lead == 0

    g = vp.weighted_game(2, [1, 1, 2, 2, 2])
    res = vp.form_bloc(g, [3])  # singleton bloc: nothing changes
    assert vp.same_winning_family(res.game, g)
    assert res.lead == 3


def test_form_bloc_lead_choice_does_not_change_the_game():
    g = vp.weighted_game(2, [1, 1, 2, 2, 2])
    a = vp.form_bloc(g, [0, 1], lead=0)
    b = vp.form_bloc(g, [0, 1], lead=1)
    assert vp.same_winning_family(a.game, b.game)


def test_form_bloc_errors():
    g = vp.weighted_game(3, [2, 1, 1])
    with pytest.raises(EmptyBlocError):
        vp.form_bloc(g, [])
    with pytest.raises(EmptyBlocError):
        vp.form_bloc(g, [0, 1], lead=2)


def test_iterated_donation_is_order_independent():
    import itertools

    for game in enumerate_games(ExhaustiveMonotone(3)):
        reference = vp.form_bloc(game, [0, 1, 2]).game
        for order in itertools.permutations([1, 2]):
            g = game
            for donor in order:
                g = vp.donate_votes(g, donor, 0)
            for donor in sorted(order, reverse=True):
                g, _ = vp.delete_dummy(g, donor)
            assert vp.same_winning_family(g, reference)


# ---------------------------------------------------------------------------
# Added blockers, dummy deletion, permutation
# ---------------------------------------------------------------------------


def test_add_yes_blocker_matches_reference_game():
    extended = vp.add_yes_blocker(vp.weighted_game(3, [2, 1, 1]))
    assert vp.same_winning_family(extended, vp.weighted_game(8, [2, 1, 1, 5]))


def test_add_yes_blocker_properties():
    for game in list(enumerate_games(ExhaustiveMonotone(3)))[:8] + [
        vp.weighted_game(1, [1])
    ]:
        extended = vp.add_yes_blocker(game)
        assert extended.n == game.n + 1
        assert game.n in vp.yes_blockers(extended)
        # dropping the blocker from every winning coalition recovers the game
        bit = 1 << game.n
        recovered = {
            m & ~bit for m in vp.min_winning_coalitions(extended)
        }
        assert recovered == set(vp.min_winning_coalitions(game))
    assert vp.same_winning_family(
        vp.add_yes_blocker(vp.weighted_game(1, [1])), vp.weighted_game(2, [1, 1])
    )


def test_add_no_blocker_properties():
    for game in list(enumerate_games(ExhaustiveMonotone(3)))[:8]:
        extended = vp.add_no_blocker(game)
        assert game.n in vp.no_blockers(extended)
        for m in vp.min_winning_coalitions(game):
            assert vp.is_winning(extended, m)  # old wins survive without the blocker
    two = vp.add_no_blocker(vp.weighted_game(1, [1]))
    assert set(vp.min_winning_coalitions(two)) == {0b01, 0b10}


def test_delete_dummy():
    g = vp.weighted_game(3, [3, 1])
    reduced, old_to_new = vp.delete_dummy(g, 1)
    assert reduced.n == 1 and old_to_new == {0: 0}
    assert vp.same_winning_family(reduced, vp.weighted_game(1, [1]))
    with pytest.raises(NotADummyError):
        vp.delete_dummy(vp.weighted_game(3, [2, 1, 1]), 0)


def test_permute_players():
    g = vp.weighted_game(3, [2, 1, 1])
    assert vp.permute_players(g, [0, 1, 2]) == g
    swapped = vp.permute_players(g, [0, 2, 1])
    assert vp.same_winning_family(swapped, g)  # equal weights on 1 and 2
    with pytest.raises(NotAPermutationError):
        vp.permute_players(g, [0, 0, 1])


def test_permutation_group_action_and_blockers():
    rng = random.Random(23)
    for game in [random_weighted(rng, 5) for _ in range(10)]:
        p = list(range(game.n))
        q = list(range(game.n))
        rng.shuffle(p)
        rng.shuffle(q)
        composed = [q[p[i]] for i in range(game.n)]
        assert vp.permute_players(vp.permute_players(game, p), q) == vp.permute_players(
            game, composed
        )
        assert vp.yes_blockers(vp.permute_players(game, p)) == {
            p[b] for b in vp.yes_blockers(game)
        }


# ---------------------------------------------------------------------------
# Game files
# ---------------------------------------------------------------------------


def test_game_file_round_trip(tmp_path):
    games = [
        vp.weighted_game(3, [2, 1, 1]),
        vp.explicit_game(3, [[0, 1], [0, 2]]),
        vp.weighted_game(2, [1, 1, 2, 2, 2]),
    ]
    for k, game in enumerate(games):
        path = tmp_path / f"g{k}.json"
        vp.save_game(game, path)
        loaded = vp.load_game(path)
        assert loaded == vp.validate(loaded) == game


def test_game_file_format_is_one_based():
    d = vp.game_to_dict(vp.explicit_game(3, [[0, 1], [0, 2]]))
    assert d == {"n": 3, "rule": {"explicit": {"min_winning": [[1, 2], [1, 3]]}}}
    g = vp.game_from_dict({"n": 3, "rule": {"weighted": {"quota": 3, "weights": [2, 1, 1]}}})
    assert g == vp.weighted_game(3, [2, 1, 1])


def test_game_file_rejects_garbage(tmp_path):
    with pytest.raises(GameValidationError):
        vp.game_from_dict({"n": 3})
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    with pytest.raises(GameValidationError):
        vp.load_game(bad)


def test_describe():
    assert vp.describe(vp.weighted_game(3, [2, 1, 1])) == "{3; 2, 1, 1}"
    assert "{1,2}" in vp.describe(vp.explicit_game(3, [[0, 1], [0, 2]]))
