"""Self-verifying reproduction of the published reference results.

Each group re-derives one cluster of reference values from scratch and
compares exactly: the worked numeric examples (groups t1, t2, t4, t8 and the
bloc examples), and the universally quantified claims, which are swept
exhaustively over every monotone nontrivial four-player game (groups t3, t5,
t6, t7, t9).  A group passes only on exact rational equality, so the whole
run doubles as an end-to-end integrity check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .games import add_yes_blocker, same_winning_family, weighted_game
from .measures import Measure, pb, power, power_split, rm, ss
from .postulates import (
    FAILS,
    Postulate,
    check,
    check_add1,
    check_sbb,
    check_sbk1,
    check_wbk1,
    check_wmp1,
    qualifier_space,
)
from .rational import format_fraction
from .search import ExhaustiveMonotone, enumerate_games, paper_corpus, unanimity


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    expected: str
    actual: str
    ok: bool


def _cmp(group: str, name: str, expected, actual) -> CheckResult:
    e = _fmt(expected)
    a = _fmt(actual)
    return CheckResult(group, name, e, a, e == a)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def _sweep(group, name, measure, postulates, n=4) -> CheckResult:
    games = violations = 0
    for game in enumerate_games(ExhaustiveMonotone(n)):
        games += 1
        for post in postulates:
            for qualifier in qualifier_space(game, post):
                if check(game, measure, post, qualifier).status == FAILS:
                    violations += 1
    return _cmp(group, f"{name}-{games}-games", "0 violations", f"{violations} violations")


def group_t1() -> list[CheckResult]:
    """Unanimity-3: the decisiveness measure exceeds the member sum after a full bloc."""
    g = unanimity(3)
    out = [_cmp("t1", "pb-per-player", ("1/4", "1/4", "1/4"), tuple(pb(g).totals))]
    v = check_wbk1(g, Measure.PB, (0, 1, 2))
    out.append(_cmp("t1", "bloc-power", Fraction(1), v.witness["lhs"]))
    out.append(_cmp("t1", "member-sum", Fraction(3, 4), v.witness["rhs"]))
    out.append(_cmp("t1", "wbk1-verdict", FAILS, v.status))
    return out


def group_t2() -> list[CheckResult]:
    """{3;2,1,1}: bloc of the blocker and a small voter beats the pair's sum."""
    g = weighted_game(3, [2, 1, 1])
    out = [_cmp("t2", "ss-values", ("2/3", "1/6", "1/6"), tuple(ss(g).totals))]
    v = check_sbk1(g, Measure.SS, (0, 1))
    out.append(_cmp("t2", "bloc-power", Fraction(1), v.witness["lhs"]))
    out.append(_cmp("t2", "pair-sum", Fraction(5, 6), v.witness["rhs"]))
    out.append(_cmp("t2", "sbk1-verdict", FAILS, v.status))
    return out


def group_t3() -> list[CheckResult]:
    """The recursive measure never violates blocker subadditivity (exhaustive n=4)."""
    return [
        _sweep("t3", "rm-sbk-sweep", Measure.RM, (Postulate.SBK1, Postulate.SBK2)),
        _sweep("t3", "rm-wbk-sweep", Measure.RM, (Postulate.WBK1, Postulate.WBK2)),
    ]


def group_t4() -> list[CheckResult]:
    """Unanimity blockers: decisiveness power halves per player while 1/n shrinks slowly."""
    out = []
    for n in range(3, 11):
        g = unanimity(n)
        got = pb(g).totals[0]
        out.append(_cmp("t4", f"pb-unanimity-{n}", Fraction(1, 2 ** (n - 1)), got))
        if n >= 5:
            out.append(
                _cmp("t4", f"below-1/{n}", True, got < Fraction(1, n))
            )
        out.append(_cmp("t4", f"wmp1-verdict-{n}", FAILS, check_wmp1(g, Measure.PB).status))
    return out


def group_t5() -> list[CheckResult]:
    """The permutation-weighted measure meets the minimum-power bound (exhaustive n=4)."""
    return [_sweep("t5", "ss-smp-sweep", Measure.SS, (Postulate.SMP1, Postulate.SMP2))]


def group_t6() -> list[CheckResult]:
    """The recursive measure meets the minimum-power bound (exhaustive n=4)."""
    return [_sweep("t6", "rm-smp-sweep", Measure.RM, (Postulate.SMP1, Postulate.SMP2))]


def group_t7() -> list[CheckResult]:
    """Added blockers leave decisiveness-power ratios untouched (exhaustive n=4)."""
    return [
        _sweep(
            "t7",
            "pb-add-sweep",
            Measure.PB,
            (Postulate.ADD0, Postulate.ADD1, Postulate.ADD2),
        )
    ]


def group_t8() -> list[CheckResult]:
    """An added YES-blocker shifts the permutation-weighted YES-power ratio 4 -> 5."""
    g = weighted_game(3, [2, 1, 1])
    gy = add_yes_blocker(g)
    out = [
        _cmp("t8", "extended-family", True, same_winning_family(gy, weighted_game(8, [2, 1, 1, 5]))),
        _cmp("t8", "ss-yes-before", ("1/3", "1/12"), tuple(ss(g).yes_powers[:2])),
        _cmp("t8", "ss-yes-after", ("5/24", "1/24"), tuple(ss(gy).yes_powers[:2])),
        _cmp("t8", "split-player-1", ("1/3", "1/3"), power_split(ss(g))[0]),
    ]
    v = check_add1(g, Measure.SS, 0, 1)
    out.append(_cmp("t8", "ratio-before", Fraction(4), v.witness["lhs"]))
    out.append(_cmp("t8", "ratio-after", Fraction(5), v.witness["rhs"]))
    out.append(_cmp("t8", "add1-verdict", FAILS, v.status))
    return out


def group_t9() -> list[CheckResult]:
    """The recursive measure keeps one-sided ratios under added blockers (exhaustive n=4)."""
    return [
        _sweep("t9", "rm-add-sweep", Measure.RM, (Postulate.ADD1, Postulate.ADD2))
    ]


def group_blocs() -> list[CheckResult]:
    """{2;1,1,2,2,2}: both remaining measures break plain bloc subadditivity."""
    g = weighted_game(2, [1, 1, 2, 2, 2])
    out = [
        _cmp("blocs", "ss-pair", ("1/20", "1/20"), tuple(ss(g).totals[:2])),
        _cmp("blocs", "rm-pair", ("41/320", "41/320"), tuple(rm(g).totals[:2])),
    ]
    v = check_sbb(g, Measure.SS, (0, 1))
    out.append(_cmp("blocs", "ss-bloc-power", Fraction(1, 4), v.witness["lhs"]))
    out.append(_cmp("blocs", "ss-pair-sum", Fraction(1, 10), v.witness["rhs"]))
    out.append(_cmp("blocs", "ss-sbb-verdict", FAILS, v.status))
    v = check_sbb(g, Measure.RM, (0, 1))
    out.append(_cmp("blocs", "rm-bloc-power", Fraction(19, 64), v.witness["lhs"]))
    out.append(_cmp("blocs", "rm-pair-sum", Fraction(41, 160), v.witness["rhs"]))
    out.append(_cmp("blocs", "rm-sbb-verdict", FAILS, v.status))
    return out


def group_dictator() -> list[CheckResult]:
    """The dictator benchmark value is 1 under every measure."""
    g = weighted_game(1, [1])
    return [
        _cmp("dictator", f"{m.value}-dictator", Fraction(1), power(g, m).totals[0])
        for m in Measure
    ]


def group_efficiency() -> list[CheckResult]:
    """The permutation-weighted measure always distributes exactly one unit."""
    out = []
    for name, game in sorted(paper_corpus().items()):
        total = sum(ss(game).totals, Fraction(0))
        out.append(_cmp("efficiency", f"ss-sum-{name}", Fraction(1), total))
    return out


GROUPS = {
    "t1": group_t1,
    "t2": group_t2,
    "t3": group_t3,
    "t4": group_t4,
    "t5": group_t5,
    "t6": group_t6,
    "t7": group_t7,
    "t8": group_t8,
    "t9": group_t9,
    "blocs": group_blocs,
    "dictator": group_dictator,
    "efficiency": group_efficiency,
}


def run(groups: list[str] | None = None) -> list[CheckResult]:
    """Run the requested groups (default: all) and return every comparison."""
    selected = list(GROUPS) if groups is None else groups
    results: list[CheckResult] = []
    for name in selected:
        if name not in GROUPS:
            raise KeyError(f"unknown reproduction group {name!r}; known: {', '.join(GROUPS)}")
        results.extend(GROUPS[name]())
    return results
