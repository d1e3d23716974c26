"""Measure-layer tests.

The recursive measure is cross-checked against an independent set-based
recursion (frozensets, top-down, no bitmasks) so the production lattice sweep
and its oracle never share code.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction as F
from itertools import combinations

import pytest

import votepower as vp
from votepower.errors import NotWeightedError, TooManyPlayersError
from votepower.games import mask_of
from votepower.measures import Measure
from votepower.search import ExhaustiveMonotone, enumerate_games

D = vp.Division


# -- independent recursion oracle -------------------------------------------


def set_based_rm(game):
    n = game.n
    players = frozenset(range(n))

    def win(s):
        return vp.is_winning(game, mask_of(s))

    memo = {}

    def alpha(i, s):
        key = (i, s)
        if key in memo:
            return memo[key]
        if i in s and win(s) and not win(s - {i}):
            v = F(1)
        elif i not in s and not win(s) and win(s | {i}):
            v = F(1)
        elif (i in s) != win(s):
            v = F(0)
        else:
            if win(s):
                kids = [s - {j} for j in s if win(s - {j})]
            else:
                kids = [s | {j} for j in players - s if not win(s | {j})]
            v = sum(alpha(i, k) for k in kids) / len(kids)
        memo[key] = v
        return v

    subsets = [
        frozenset(c) for r in range(n + 1) for c in combinations(range(n), r)
    ]
    yes = [sum(alpha(i, s) for s in subsets if i in s) / 2**n for i in range(n)]
    no = [sum(alpha(i, s) for s in subsets if i not in s) / 2**n for i in range(n)]
    return yes, no


def random_weighted(rng, n, max_weight=5):
    weights = [rng.randint(1, max_weight) for _ in range(n)]
    quota = rng.randint(1, sum(weights))
    return vp.weighted_game(quota, weights)


# -- decisiveness ------------------------------------------------------------


def test_decisiveness_examples():
    g = vp.weighted_game(3, [2, 1, 1])
    assert vp.is_yes_decisive(g, 0, D(mask_of([0, 1]), 3))
    assert not vp.is_yes_decisive(g, 0, D(mask_of([1, 2]), 3))  # votes NO there
    assert vp.is_no_decisive(g, 0, D(mask_of([1]), 3))
    assert not vp.is_no_decisive(g, 0, D(mask_of([0, 1]), 3))  # votes YES there
    u3 = vp.weighted_game(3, [1, 1, 1])
    assert vp.is_no_decisive(u3, 0, D(mask_of([1, 2]), 3))
    dictator = vp.weighted_game(1, [1, 0])
    for m in range(4):
        if m & 1:
            assert vp.is_yes_decisive(dictator, 0, D(m, 2))


# -- the decisiveness measures ----------------------------------------------


def test_pb_values():
    u3 = vp.weighted_game(3, [1, 1, 1])
    report = vp.pb(u3)
    assert report.totals == (F(1, 4),) * 3
    assert report.yes_powers == (F(1, 8),) * 3
    for n in range(3, 11):
        assert vp.pb(vp.weighted_game(n, [1] * n)).totals == (F(1, 2 ** (n - 1)),) * n
    dictator = vp.weighted_game(1, [1, 0, 0])
    assert vp.pb(dictator).totals == (F(1), F(0), F(0))


def test_pb_star_matches_pb():
    assert vp.pb_star(vp.weighted_game(3, [2, 1, 1]))[0] == F(3, 4)
    rng = random.Random(31)
    games = list(enumerate_games(ExhaustiveMonotone(4)))
    games += [random_weighted(rng, rng.randint(2, 8)) for _ in range(200)]
    for game in games:
        assert vp.pb_star(game) == vp.pb(game).totals


def test_ss_values():
    g = vp.weighted_game(3, [2, 1, 1])
    assert vp.ss(g).totals == (F(2, 3), F(1, 6), F(1, 6))
    g2 = vp.weighted_game(2, [1, 1, 2, 2, 2])
    assert vp.ss(g2).totals[:2] == (F(1, 20), F(1, 20))
    assert vp.ss(vp.weighted_game(1, [1])).totals == (F(1),)


def test_ss_efficiency():
    rng = random.Random(37)
    games = list(enumerate_games(ExhaustiveMonotone(3)))
    games += [random_weighted(rng, 6) for _ in range(20)]
    for game in games:
        assert sum(vp.ss(game).totals, F(0)) == 1


def test_ss_star_matches_ss():
    assert vp.ss_star(vp.weighted_game(2, [1, 1])) == (F(1, 2), F(1, 2))
    g8 = vp.weighted_game(8, [2, 1, 1, 5])
    assert vp.ss_star(g8) == (F(5, 12), F(1, 12), F(1, 12), F(5, 12))
    assert vp.ss(g8).yes_powers == (F(5, 24), F(1, 24), F(1, 24), F(5, 24))
    rng = random.Random(41)
    games = list(enumerate_games(ExhaustiveMonotone(4)))
    games += [random_weighted(rng, rng.randint(2, 8)) for _ in range(200)]
    for game in games:
        assert vp.ss_star(game) == vp.ss(game).totals


def test_power_split():
    u3 = vp.weighted_game(3, [1, 1, 1])
    assert vp.power_split(vp.pb(u3)) == [(F(1, 8), F(1, 8))] * 3
    g = vp.weighted_game(3, [2, 1, 1])
    assert vp.power_split(vp.ss(g))[0] == (F(2, 6), F(2, 6))
    # the recursive measure is not strategy symmetric
    r = vp.rm(vp.weighted_game(2, [1, 1]))
    split = vp.power_split(r)
    assert split[0] == (F(1, 4), F(3, 8))
    assert split[0][0] != split[0][1]


# -- recursive measure -------------------------------------------------------


def test_loyal_children_examples():
    u3 = vp.weighted_game(3, [1, 1, 1])
    assert vp.loyal_children(u3, D(0b111, 3)) == []
    assert [d.yes_mask for d in vp.loyal_children(u3, D(0, 3))] == [1, 2, 4]
    g = vp.weighted_game(2, [1, 1, 2, 2, 2])
    assert [d.yes_mask for d in vp.loyal_children(g, D(0, 5))] == [1, 2]


def test_rm_efficacy_examples():
    maj3 = vp.weighted_game(2, [1, 1, 1])
    assert vp.rm_efficacy(maj3, 0, D(0, 3)) == F(2, 3)
    # decisive and unsuccessful branches
    assert vp.rm_efficacy(maj3, 0, D(mask_of([0, 1]), 3)) == 1
    assert vp.rm_efficacy(maj3, 0, D(mask_of([1, 2]), 3)) == 0


def test_rm_values():
    g = vp.weighted_game(2, [1, 1, 2, 2, 2])
    assert vp.rm(g).totals[:2] == (F(41, 320), F(41, 320))
    bloc = vp.form_bloc(g, [0, 1])
    assert vp.rm(bloc.game).totals[bloc.lead] == F(19, 64)
    assert vp.rm(vp.weighted_game(1, [1])).totals == (F(1),)
    assert vp.rm(vp.weighted_game(2, [1, 1])).totals == (F(5, 8), F(5, 8))


def test_rm_against_independent_recursion():
    rng = random.Random(43)
    games = list(enumerate_games(ExhaustiveMonotone(3)))
    games += [random_weighted(rng, 4) for _ in range(10)]
    games.append(vp.weighted_game(2, [1, 1, 2, 2, 2]))
    for game in games:
        yes, no = set_based_rm(game)
        report = vp.rm(game)
        assert report.yes_powers == tuple(yes)
        assert report.no_powers == tuple(no)


def test_rm_bounds():
    rng = random.Random(47)
    for game in [random_weighted(rng, 5) for _ in range(10)]:
        report = vp.rm(game)
        for t in report.totals:
            assert 0 <= t <= 1
        for d in vp.all_divisions(game.n):
            for i in range(game.n):
                assert 0 <= vp.rm_efficacy(game, i, d) <= 1


def test_rm_path_oracle():
    maj3 = vp.weighted_game(2, [1, 1, 1])
    assert vp.rm_path_oracle(maj3, 0, D(0, 3)) == F(2, 3)
    g = vp.weighted_game(2, [1, 1, 2, 2, 2])
    assert vp.rm_path_oracle(g, 0, D(0, 5)) == vp.rm_efficacy(g, 0, D(0, 5))
    # the NO-side component of any winning division is zero
    for m in range(1 << 3):
        if vp.is_winning(maj3, m):
            for i in range(3):
                assert vp.rm_path_oracle(maj3, i, D(m, 3), side="no") == 0
    with pytest.raises(TooManyPlayersError):
        vp.rm_path_oracle(vp.weighted_game(11, [1] * 11), 0, D(0, 11))


def test_added_blocker_efficacy_identities():
    # YES-side scores survive the embedding S -> S + blocker, and vanish at
    # divisions the blocker sits out; mirrored for the NO side.
    from votepower import _kernels_py as pyk
    from votepower.engine import winning_table

    for n in (1, 2, 3, 4):
        for game in enumerate_games(ExhaustiveMonotone(n)):
            win = winning_table(game)
            ext_y = vp.add_yes_blocker(game)
            ext_n = vp.add_no_blocker(game)
            win_y = winning_table(ext_y)
            win_n = winning_table(ext_n)
            bit = 1 << n
            for i in range(n):
                base = pyk.rm_alpha_table(n, win, i)
                tab_y = pyk.rm_alpha_table(n + 1, win_y, i)
                tab_n = pyk.rm_alpha_table(n + 1, win_n, i)
                for m in range(1 << n):
                    if m & (1 << i):  # YES-side scores of player i
                        assert tab_y[m | bit] == base[m]
                        assert tab_y[m] == 0
                    else:  # NO-side scores
                        assert tab_n[m] == base[m]
                        assert tab_n[m | bit] == 0


def test_rm_halving_under_added_blockers_spot():
    g = vp.weighted_game(3, [2, 1, 1])
    r = vp.rm(g)
    ry = vp.rm(vp.add_yes_blocker(g))
    rn = vp.rm(vp.add_no_blocker(g))
    for i in range(3):
        assert ry.yes_powers[i] * 2 == r.yes_powers[i]
        assert rn.no_powers[i] * 2 == r.no_powers[i]


# -- fast paths ---------------------------------------------------------------


def test_fast_paths_match_enumeration():
    rng = random.Random(53)
    games = [
        vp.weighted_game(3, [2, 1, 1]),
        vp.weighted_game(2, [1, 1, 2, 2, 2]),
        vp.weighted_game(8, [2, 1, 1, 5]),
    ]
    games += [random_weighted(rng, rng.randint(2, 8), 6) for _ in range(50)]
    for game in games:
        assert vp.pb_fast(game) == vp.pb(game)
        assert vp.ss_fast(game) == vp.ss(game)


def test_fast_paths_handle_zero_weights():
    g = vp.weighted_game(2, [2, 0, 1])
    assert vp.pb_fast(g) == vp.pb(g)
    assert vp.ss_fast(g) == vp.ss(g)


def test_fast_paths_reject_explicit_rules():
    with pytest.raises(NotWeightedError):
        vp.pb_fast(vp.explicit_game(2, [[0, 1]]))
    with pytest.raises(NotWeightedError):
        vp.ss_fast(vp.explicit_game(2, [[0, 1]]))


def test_fast_path_unanimity_20():
    report = vp.pb_fast(vp.weighted_game(20, [1] * 20))
    assert report.totals == (F(1, 2**19),) * 20


# -- guards and reports -------------------------------------------------------


def test_enumeration_cap():
    big = vp.weighted_game(1, [1] * 25)
    with pytest.raises(TooManyPlayersError):
        vp.pb(big)
    with pytest.raises(TooManyPlayersError):
        vp.rm(big)
    # the cap is configurable per call
    small = vp.weighted_game(1, [1] * 5)
    with pytest.raises(TooManyPlayersError):
        vp.pb(small, max_players=4)
    vp.pb(small, max_players=5)


def test_zero_power_iff_dummy():
    rng = random.Random(59)
    games = list(enumerate_games(ExhaustiveMonotone(3)))
    games += [random_weighted(rng, 5) for _ in range(10)]
    games.append(vp.weighted_game(3, [3, 1]))
    for game in games:
        for measure in Measure:
            report = vp.power(game, measure)
            for i in range(game.n):
                assert (report.totals[i] == 0) == vp.is_dummy(game, i)


def test_report_serialization():
    report = vp.rm(vp.weighted_game(2, [1, 1, 2, 2, 2]))
    rows = report.to_rows()
    assert rows[0] == {
        "player": 1,
        "measure": "rm",
        "total": "41/320",
        "yes": "13/160",
        "no": "3/64",
        "decimal": 0.128125,
    }
    assert json.loads(report.to_json()) == rows
    csv_text = report.to_csv()
    assert csv_text.splitlines()[0] == "player,measure,total,yes,no,decimal"
    assert "41/320" in csv_text
    # fractions parse back exactly
    assert F(rows[0]["total"]) == F(41, 320)
