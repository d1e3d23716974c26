"""Postulate checkers: exact-arithmetic verdicts with witnesses.

Each checker evaluates one postulate for a (game, measure) pair, together
with whatever qualifier the postulate quantifies over (a bloc, an ordered
player pair, a permutation).  A verdict is "holds", "fails", or
"not_applicable"; the last is returned whenever the postulate's precondition
(blocker membership, a nonzero ratio denominator) is unmet, and is never
counted as satisfaction or violation.

Failing verdicts always carry a witness whose lhs/rhs reproduce the violated
comparison exactly; holding verdicts carry the binding (tightest) case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import EmptyBlocError
from .games import (
    SimpleVotingGame,
    add_no_blocker,
    add_yes_blocker,
    delete_dummy,
    form_bloc,
    full_mask,
    game_to_dict,
    is_dummy,
    is_winning,
    largest_losing_size,
    mask_of,
    no_blockers,
    permute_players,
    smallest_winning_size,
    validate,
    weighted_game,
    yes_blockers,
)
from .measures import Measure, power
from .rational import format_fraction

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not_applicable"


class Postulate(str, Enum):
    SPB = "spb"    # bloc power >= sum of member powers
    MPB = "mpb"    # bloc power >= max member power
    SBB = "sbb"    # bloc power <= sum of member powers
    SBK1 = "sbk1"  # SBB restricted to blocs containing a YES-blocker
    SBK2 = "sbk2"  # ... containing a NO-blocker
    WBK1 = "wbk1"  # ... consisting only of YES-blockers
    WBK2 = "wbk2"  # ... consisting only of NO-blockers
    BSP1 = "bsp1"  # YES-blocker's power share >= 1/|smallest winning set|
    BSP2 = "bsp2"  # NO-blocker's power share >= 1/|smallest NO-successful set|
    SMP1 = "smp1"  # YES-blocker power >= dictator power / |winning set|
    SMP2 = "smp2"  # NO-blocker power >= dictator power / |NO-successful set|
    WMP1 = "wmp1"  # SMP1 restricted to all-blocker winning sets
    WMP2 = "wmp2"  # SMP2 restricted to all-blocker NO-successful sets
    ADD0 = "add0"  # total-power ratios unchanged by an added YES-blocker
    ADD1 = "add1"  # YES-power ratios unchanged by an added YES-blocker
    ADD2 = "add2"  # NO-power ratios unchanged by an added NO-blocker
    DUMMY = "dummy"  # zero power iff dummy; deletion leaves others unchanged
    ISO = "iso"      # power commutes with player relabelling


BLOC_POSTULATES = {
    Postulate.SPB,
    Postulate.MPB,
    Postulate.SBB,
    Postulate.SBK1,
    Postulate.SBK2,
    Postulate.WBK1,
    Postulate.WBK2,
}
PAIR_POSTULATES = {Postulate.ADD0, Postulate.ADD1, Postulate.ADD2}
GAME_POSTULATES = {
    Postulate.BSP1,
    Postulate.BSP2,
    Postulate.SMP1,
    Postulate.SMP2,
    Postulate.WMP1,
    Postulate.WMP2,
    Postulate.DUMMY,
}


@dataclass(frozen=True)
class Verdict:
    postulate: Postulate
    measure: Measure
    status: str
    witness: Mapping | None = None

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def applicable(self) -> bool:
        return self.status != NOT_APPLICABLE

    def to_dict(self) -> dict:
        out: dict = {"postulate": self.postulate.value, "measure": self.measure.value}
        if self.status == NOT_APPLICABLE:
            out["not_applicable"] = True
        else:
            out["holds"] = self.status == HOLDS
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, Mapping):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _verdict(postulate, measure, ok: bool, witness) -> Verdict:
    return Verdict(postulate, measure, HOLDS if ok else FAILS, witness)


def _na(postulate, measure, reason: str) -> Verdict:
    return Verdict(postulate, measure, NOT_APPLICABLE, {"reason": reason})


# ---------------------------------------------------------------------------
# Bloc postulates
# ---------------------------------------------------------------------------


def _bloc_comparison(game, measure, members, lead):
    members = tuple(sorted(set(members)))
    if not members:
        raise EmptyBlocError("a bloc needs at least one member")
    result = form_bloc(game, members, lead)
    bloc_power = power(result.game, measure).totals[result.lead]
    before = power(game, measure)
    member_powers = [before.totals[p] for p in members]
    witness = {
        "bloc": [p + 1 for p in members],
        "lead": (members[0] if lead is None else lead) + 1,
        "bloc_power": bloc_power,
        "member_powers": member_powers,
        "bloc_game": game_to_dict(result.game),
    }
    return bloc_power, member_powers, witness


def check_spb(game, measure, members, lead=None) -> Verdict:
    """Superadditivity: bloc power at least the sum of member powers."""
    bloc_power, member_powers, witness = _bloc_comparison(game, measure, members, lead)
    rhs = sum(member_powers, Fraction(0))
    witness.update(lhs=bloc_power, rhs=rhs, relation=">=")
    return _verdict(Postulate.SPB, measure, bloc_power >= rhs, witness)


def check_mpb(game, measure, members, lead=None) -> Verdict:
    """Minimum power: bloc power at least the best member's power."""
    bloc_power, member_powers, witness = _bloc_comparison(game, measure, members, lead)
    rhs = max(member_powers)
    witness.update(lhs=bloc_power, rhs=rhs, relation=">=")
    return _verdict(Postulate.MPB, measure, bloc_power >= rhs, witness)


def _subadditive(postulate, game, measure, members, lead) -> Verdict:
    bloc_power, member_powers, witness = _bloc_comparison(game, measure, members, lead)
    rhs = sum(member_powers, Fraction(0))
    witness.update(lhs=bloc_power, rhs=rhs, relation="<=")
    return _verdict(postulate, measure, bloc_power <= rhs, witness)


def check_sbb(game, measure, members, lead=None) -> Verdict:
    """Subadditivity for arbitrary blocs (no blocker precondition)."""
    return _subadditive(Postulate.SBB, game, measure, members, lead)


def check_sbk1(game, measure, members, lead=None) -> Verdict:
    if not set(members) & yes_blockers(game):
        return _na(Postulate.SBK1, measure, "bloc contains no YES-blocker")
    return _subadditive(Postulate.SBK1, game, measure, members, lead)


def check_sbk2(game, measure, members, lead=None) -> Verdict:
    if not set(members) & no_blockers(game):
        return _na(Postulate.SBK2, measure, "bloc contains no NO-blocker")
    return _subadditive(Postulate.SBK2, game, measure, members, lead)


def check_wbk1(game, measure, members, lead=None) -> Verdict:
    members = set(members)
    if not members or not members <= yes_blockers(game):
        return _na(Postulate.WBK1, measure, "bloc is not made only of YES-blockers")
    return _subadditive(Postulate.WBK1, game, measure, members, lead)


def check_wbk2(game, measure, members, lead=None) -> Verdict:
    members = set(members)
    if not members or not members <= no_blockers(game):
        return _na(Postulate.WBK2, measure, "bloc is not made only of NO-blockers")
    return _subadditive(Postulate.WBK2, game, measure, members, lead)


# ---------------------------------------------------------------------------
# Share and minimum-power postulates
# ---------------------------------------------------------------------------


def _dictator_benchmark(measure: Measure) -> Fraction:
    # Computed, not assumed: the measure's value for the dictator of a
    # one-player dictator game.
    return power(weighted_game(1, [1]), measure).totals[0]


def _share_check(postulate, game, measure, blockers, set_size: int) -> Verdict:
    report = power(game, measure)
    total = sum(report.totals, Fraction(0))
    bound = Fraction(1, set_size)
    worst = min(blockers, key=lambda b: report.totals[b])
    share = report.totals[worst] / total
    witness = {
        "blocker": worst + 1,
        "set_size": set_size,
        "lhs": share,
        "rhs": bound,
        "relation": ">=",
    }
    ok = all(report.totals[b] * set_size >= total for b in blockers)
    return _verdict(postulate, measure, ok, witness)


def check_bsp1(game, measure) -> Verdict:
    """Share bound against the smallest winning set, for every YES-blocker."""
    blockers = yes_blockers(game)
    if not blockers:
        return _na(Postulate.BSP1, measure, "no YES-blocker")
    return _share_check(Postulate.BSP1, game, measure, blockers, smallest_winning_size(game))


def check_bsp2(game, measure) -> Verdict:
    """Share bound against the smallest NO-successful set, for every NO-blocker."""
    blockers = no_blockers(game)
    if not blockers:
        return _na(Postulate.BSP2, measure, "no NO-blocker")
    set_size = game.n - largest_losing_size(game)
    return _share_check(Postulate.BSP2, game, measure, blockers, set_size)


def _minimum_power_check(postulate, game, measure, blockers, set_size: int) -> Verdict:
    report = power(game, measure)
    bound = _dictator_benchmark(measure) / set_size
    worst = min(blockers, key=lambda b: report.totals[b])
    witness = {
        "blocker": worst + 1,
        "set_size": set_size,
        "lhs": report.totals[worst],
        "rhs": bound,
        "relation": ">=",
    }
    ok = all(report.totals[b] >= bound for b in blockers)
    return _verdict(postulate, measure, ok, witness)


def check_smp1(game, measure) -> Verdict:
    """Every YES-blocker matches the dictator benchmark spread over the
    smallest winning set (the binding case of "for any winning set")."""
    blockers = yes_blockers(game)
    if not blockers:
        return _na(Postulate.SMP1, measure, "no YES-blocker")
    return _minimum_power_check(
        Postulate.SMP1, game, measure, blockers, smallest_winning_size(game)
    )


def check_smp2(game, measure) -> Verdict:
    blockers = no_blockers(game)
    if not blockers:
        return _na(Postulate.SMP2, measure, "no NO-blocker")
    set_size = game.n - largest_losing_size(game)
    return _minimum_power_check(Postulate.SMP2, game, measure, blockers, set_size)


def check_wmp1(game, measure) -> Verdict:
    """Minimum-power bound when some winning set consists only of YES-blockers.

    A winning set of blockers must be exactly the full YES-blocker set, so the
    postulate is applicable iff that set wins.
    """
    blockers = yes_blockers(game)
    if not blockers or not is_winning(game, mask_of(blockers)):
        return _na(Postulate.WMP1, measure, "no winning set made only of YES-blockers")
    return _minimum_power_check(Postulate.WMP1, game, measure, blockers, len(blockers))


def check_wmp2(game, measure) -> Verdict:
    blockers = no_blockers(game)
    losing_rest = not is_winning(game, full_mask(game.n) & ~mask_of(blockers))
    if not blockers or not losing_rest:
        return _na(Postulate.WMP2, measure, "no NO-successful set made only of NO-blockers")
    return _minimum_power_check(Postulate.WMP2, game, measure, blockers, len(blockers))


# ---------------------------------------------------------------------------
# Added-blocker postulates
# ---------------------------------------------------------------------------


def check_add(game, measure, variant: Postulate, i: int, j: int) -> Verdict:
    """Ratio invariance under an added blocker, by exact cross-multiplication.

    ADD0 compares total-power ratios across the added-YES-blocker game, ADD1
    the YES-power ratios, ADD2 the NO-power ratios across the added-NO-blocker
    game.  Pairs whose denominator player carries zero power on the chosen
    component (a dummy) are not applicable.
    """
    if variant not in PAIR_POSTULATES:
        raise ValueError(f"{variant} is not an added-blocker postulate")
    extended = add_no_blocker(game) if variant is Postulate.ADD2 else add_yes_blocker(game)
    before = power(game, measure)
    after = power(extended, measure)
    if variant is Postulate.ADD0:
        comp_before, comp_after = before.totals, after.totals
    elif variant is Postulate.ADD1:
        comp_before, comp_after = before.yes_powers, after.yes_powers
    else:
        comp_before, comp_after = before.no_powers, after.no_powers
    a_i, a_j = comp_before[i], comp_before[j]
    b_i, b_j = comp_after[i], comp_after[j]
    if a_j == 0 or b_j == 0:
        return _na(variant, measure, f"player {j + 1} has zero power on this component")
    witness = {
        "pair": [i + 1, j + 1],
        "lhs": a_i / a_j,
        "rhs": b_i / b_j,
        "relation": "==",
        "extended_game": game_to_dict(extended),
    }
    return _verdict(variant, measure, a_i * b_j == b_i * a_j, witness)


def check_add0(game, measure, i, j) -> Verdict:
    return check_add(game, measure, Postulate.ADD0, i, j)


def check_add1(game, measure, i, j) -> Verdict:
    return check_add(game, measure, Postulate.ADD1, i, j)


def check_add2(game, measure, i, j) -> Verdict:
    return check_add(game, measure, Postulate.ADD2, i, j)


# ---------------------------------------------------------------------------
# Adequacy postulates
# ---------------------------------------------------------------------------


def check_dummy(game, measure) -> Verdict:
    """Zero power iff dummy, and deleting a dummy changes nobody's power."""
    report = power(game, measure)
    for p in range(game.n):
        if (report.totals[p] == 0) != is_dummy(game, p):
            return _verdict(
                Postulate.DUMMY,
                measure,
                False,
                {"player": p + 1, "power": report.totals[p], "is_dummy": is_dummy(game, p)},
            )
    for d in range(game.n):
        if not is_dummy(game, d) or game.n == 1:
            continue
        reduced, old_to_new = delete_dummy(game, d)
        after = power(reduced, measure)
        for p, q in old_to_new.items():
            same = (
                report.totals[p] == after.totals[q]
                and report.yes_powers[p] == after.yes_powers[q]
                and report.no_powers[p] == after.no_powers[q]
            )
            if not same:
                return _verdict(
                    Postulate.DUMMY,
                    measure,
                    False,
                    {
                        "deleted": d + 1,
                        "player": p + 1,
                        "lhs": report.totals[p],
                        "rhs": after.totals[q],
                        "relation": "==",
                    },
                )
    return _verdict(Postulate.DUMMY, measure, True, None)


def check_iso(game, measure, perm) -> Verdict:
    """Powers follow the players through a relabelling."""
    perm = tuple(perm)
    before = power(game, measure)
    after = power(permute_players(game, perm), measure)
    for i in range(game.n):
        same = (
            before.totals[i] == after.totals[perm[i]]
            and before.yes_powers[i] == after.yes_powers[perm[i]]
            and before.no_powers[i] == after.no_powers[perm[i]]
        )
        if not same:
            return _verdict(
                Postulate.ISO,
                measure,
                False,
                {
                    "perm": [p + 1 for p in perm],
                    "player": i + 1,
                    "lhs": before.totals[i],
                    "rhs": after.totals[perm[i]],
                    "relation": "==",
                },
            )
    return _verdict(Postulate.ISO, measure, True, {"perm": [p + 1 for p in perm]})


# ---------------------------------------------------------------------------
# Uniform dispatch
# ---------------------------------------------------------------------------


def default_bloc_cap(n: int) -> int:
    # Full bloc lattice at desk scale; pairwise-donation proofs make small
    # blocs dominate witnesses in larger spaces.
    return n if n <= 4 else 3


def qualifier_space(
    game: SimpleVotingGame, postulate: Postulate, bloc_cap: int | None = None
) -> Iterator[tuple]:
    """All qualifiers the postulate quantifies over, in deterministic order."""
    n = game.n
    if postulate in BLOC_POSTULATES:
        cap = default_bloc_cap(n) if bloc_cap is None else bloc_cap
        for size in range(1, min(cap, n) + 1):
            for members in itertools.combinations(range(n), size):
                yield ("bloc", members)
    elif postulate in PAIR_POSTULATES:
        for i in range(n):
            for j in range(n):
                if i != j:
                    yield ("pair", i, j)
    elif postulate is Postulate.ISO:
        if n <= 5:
            for perm in itertools.permutations(range(n)):
                yield ("perm", perm)
        else:
            yield ("perm", tuple(range(n)))
            yield ("perm", tuple(reversed(range(n))))
    else:
        yield ()


_BLOC_CHECKERS = {
    Postulate.SPB: check_spb,
    Postulate.MPB: check_mpb,
    Postulate.SBB: check_sbb,
    Postulate.SBK1: check_sbk1,
    Postulate.SBK2: check_sbk2,
    Postulate.WBK1: check_wbk1,
    Postulate.WBK2: check_wbk2,
}
_GAME_CHECKERS = {
    Postulate.BSP1: check_bsp1,
    Postulate.BSP2: check_bsp2,
    Postulate.SMP1: check_smp1,
    Postulate.SMP2: check_smp2,
    Postulate.WMP1: check_wmp1,
    Postulate.WMP2: check_wmp2,
    Postulate.DUMMY: check_dummy,
}


def check(
    game: SimpleVotingGame,
    measure: Measure,
    postulate: Postulate,
    qualifier: tuple = (),
) -> Verdict:
    """Run one postulate check for one qualifier (see :func:`qualifier_space`)."""
    validate(game)
    measure = Measure(measure)
    postulate = Postulate(postulate)
    if postulate in BLOC_POSTULATES:
        members = qualifier[1]
        lead = qualifier[2] if len(qualifier) > 2 else None
        return _BLOC_CHECKERS[postulate](game, measure, members, lead)
    if postulate in PAIR_POSTULATES:
        _, i, j = qualifier
        return check_add(game, measure, postulate, i, j)
    if postulate is Postulate.ISO:
        perm = qualifier[1] if qualifier else tuple(range(game.n))
        return check_iso(game, measure, perm)
    return _GAME_CHECKERS[postulate](game, measure)


def summarize(verdicts) -> dict[tuple[str, str], dict[str, int]]:
    """Tally verdicts into (postulate, measure) -> holds/fails/not_applicable counts."""
    out: dict[tuple[str, str], dict[str, int]] = {}
    for v in verdicts:
        key = (v.postulate.value, v.measure.value)
        bucket = out.setdefault(key, {HOLDS: 0, FAILS: 0, NOT_APPLICABLE: 0})
        bucket[v.status] += 1
    return out
