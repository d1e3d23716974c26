"""Command-line front end.

Subcommands: ``validate``, ``power``, ``check``, ``bloc``, ``add-blocker``,
``search``, ``reproduce``.  Players are 1-based everywhere on the command
line and in output.  Exit status: 0 on success (and on "holds" / nothing
found), 1 when a postulate check fails or a search finds a counterexample,
2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import reproduce as repro
from .errors import VotePowerError
from .games import (
    SimpleVotingGame,
    Weighted,
    add_no_blocker,
    add_yes_blocker,
    describe,
    form_bloc,
    game_to_dict,
    load_game,
    save_game,
)
from .measures import MAX_WEIGHT_SUM, Measure, PowerReport, pb, pb_fast, rm, ss, ss_fast
from .postulates import FAILS, Postulate, check, qualifier_space, summarize
from .rational import format_fraction
from .search import (
    CounterexampleReport,
    ExhaustiveMonotone,
    RandomWeighted,
    WeightedGrid,
    corpus_game,
    find_counterexample,
    paper_corpus,
)


def _add_game_source(parser: argparse.ArgumentParser) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--game", metavar="FILE", help="game JSON file")
    src.add_argument(
        "--corpus",
        metavar="NAME",
        help="built-in game: %s, unanimityN, dictatorN" % ", ".join(sorted(paper_corpus())),
    )


def _resolve_game(args) -> SimpleVotingGame:
    if args.game:
        return load_game(args.game)
    try:
        return corpus_game(args.corpus)
    except KeyError as exc:
        raise VotePowerError(str(exc)) from exc


def _parse_players(text: str) -> tuple[int, ...]:
    try:
        players = tuple(int(p) - 1 for p in text.replace(" ", "").split(",") if p)
    except ValueError as exc:
        raise VotePowerError(f"bad player list {text!r}") from exc
    if not players or any(p < 0 for p in players):
        raise VotePowerError(f"bad player list {text!r}: players are 1-based")
    return players


def _print_table(rows: list[dict]) -> None:
    if not rows:
        return
    headers = list(rows[0])
    widths = [max(len(h), *(len(str(r[h])) for r in rows)) for h in headers]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for r in rows:
        print("  ".join(str(r[h]).ljust(w) for h, w in zip(headers, widths)))


def _compute_report(game: SimpleVotingGame, measure: Measure, max_n: int | None) -> PowerReport:
    # Weighted games take the dynamic-programming route for the decisiveness
    # measures (identical exact output, polynomial in n * weight total).
    weighted = isinstance(game.rule, Weighted) and sum(game.rule.weights) <= MAX_WEIGHT_SUM
    if measure is Measure.PB:
        return pb_fast(game) if weighted else pb(game, max_n)
    if measure is Measure.SS:
        return ss_fast(game) if weighted else ss(game, max_n)
    return rm(game, max_n)


def cmd_validate(args) -> int:
    game = _resolve_game(args)
    print(f"ok: n={game.n}, {describe(game)}")
    return 0


def cmd_power(args) -> int:
    game = _resolve_game(args)
    measures = [Measure(m) for m in args.measure] if args.measure else list(Measure)
    rows: list[dict] = []
    for measure in measures:
        rows.extend(_compute_report(game, measure, args.max_n).to_rows())
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        print("player,measure,total,yes,no,decimal")
        for r in rows:
            print(",".join(str(r[k]) for k in ("player", "measure", "total", "yes", "no", "decimal")))
    else:
        _print_table(rows)
    return 0


def _explicit_qualifier(args, postulate: Postulate) -> tuple | None:
    if args.bloc and postulate in {
        Postulate.SPB, Postulate.MPB, Postulate.SBB,
        Postulate.SBK1, Postulate.SBK2, Postulate.WBK1, Postulate.WBK2,
    }:
        members = _parse_players(args.bloc)
        if args.lead is not None:
            return ("bloc", members, args.lead - 1)
        return ("bloc", members)
    if args.pair and postulate in {Postulate.ADD0, Postulate.ADD1, Postulate.ADD2}:
        return ("pair", args.pair[0] - 1, args.pair[1] - 1)
    return None


def cmd_check(args) -> int:
    game = _resolve_game(args)
    measures = [Measure(m) for m in args.measure] if args.measure else list(Measure)
    postulates = [Postulate(p.lower()) for p in args.postulate]
    verdicts = []
    enumerated = False
    for postulate in postulates:
        for measure in measures:
            explicit = _explicit_qualifier(args, postulate)
            if explicit is not None:
                verdicts.append(check(game, measure, postulate, explicit))
            else:
                enumerated = True
                for qualifier in qualifier_space(game, postulate, args.bloc_cap):
                    verdicts.append(check(game, measure, postulate, qualifier))
    if args.format == "json":
        print(json.dumps([v.to_dict() for v in verdicts], indent=2))
        if enumerated:
            tally = summarize(verdicts)
            print(
                json.dumps(
                    {
                        "summary": [
                            {"postulate": p, "measure": m, **counts}
                            for (p, m), counts in sorted(tally.items())
                        ]
                    }
                ),
                file=sys.stderr,
            )
    else:
        rows = []
        for v in verdicts:
            w = v.witness or {}
            rows.append(
                {
                    "postulate": v.postulate.value,
                    "measure": v.measure.value,
                    "status": v.status,
                    "lhs": _maybe_fraction(w.get("lhs")),
                    "relation": w.get("relation", ""),
                    "rhs": _maybe_fraction(w.get("rhs")),
                    "detail": _qualifier_detail(w),
                }
            )
        _print_table(rows)
        if enumerated:
            print()
            _print_table(
                [
                    {"postulate": p, "measure": m, **counts}
                    for (p, m), counts in sorted(summarize(verdicts).items())
                ]
            )
    return 1 if any(v.status == FAILS for v in verdicts) else 0


def _maybe_fraction(value) -> str:
    return format_fraction(value) if isinstance(value, Fraction) else ("" if value is None else str(value))


def _qualifier_detail(witness: dict) -> str:
    for key in ("bloc", "pair", "blocker", "player", "reason"):
        if key in witness:
            return f"{key}={witness[key]}"
    return ""


def _emit_game(args, game: SimpleVotingGame, extra: dict) -> int:
    if args.out:
        save_game(game, args.out)
        print(json.dumps({"written": args.out, **extra}))
    else:
        print(json.dumps(game_to_dict(game), indent=2))
        print(json.dumps(extra), file=sys.stderr)
    return 0


def cmd_bloc(args) -> int:
    game = _resolve_game(args)
    members = _parse_players(args.members)
    lead = args.lead - 1 if args.lead else None
    result = form_bloc(game, members, lead)
    extra = {
        "old_to_new": {str(k + 1): v + 1 for k, v in sorted(result.old_to_new.items())},
        "lead": result.lead + 1,
    }
    return _emit_game(args, result.game, extra)


def cmd_add_blocker(args) -> int:
    game = _resolve_game(args)
    extended = add_yes_blocker(game) if args.side == "yes" else add_no_blocker(game)
    return _emit_game(args, extended, {"new_player": extended.n})


def cmd_search(args) -> int:
    if args.space == "exhaustive":
        space = ExhaustiveMonotone(args.n)
    elif args.space == "grid":
        space = WeightedGrid(args.n, args.max_weight)
    else:
        space = RandomWeighted(args.n, args.max_weight, args.count, args.seed)
    outcome = find_counterexample(
        space,
        Measure(args.measure),
        Postulate(args.postulate.lower()),
        bloc_cap=args.bloc_cap,
        max_games=args.max_games,
    )
    if isinstance(outcome, CounterexampleReport):
        line = outcome.to_json_line()
        if args.jsonl:
            with open(args.jsonl, "a") as fh:
                fh.write(line + "\n")
        print(line)
        print(
            f"# counterexample after {outcome.games_tested} games, "
            f"{outcome.instances_tested} instances, {outcome.elapsed_seconds:.2f}s",
            file=sys.stderr,
        )
        return 1
    print(
        json.dumps(
            {
                "found": None,
                "games_tested": outcome.games_tested,
                "instances_tested": outcome.instances_tested,
                "exhausted": outcome.exhausted,
                "elapsed_seconds": round(outcome.elapsed_seconds, 3),
            }
        )
    )
    return 0


def cmd_reproduce(args) -> int:
    if args.theorem:
        groups = [f"t{t}" for t in args.theorem]
    else:
        groups = None
    results = repro.run(groups)
    failed = 0
    for r in results:
        mark = "ok" if r.ok else "FAIL"
        print(f"[{mark:>4}] {r.group}/{r.name}: expected {r.expected}, got {r.actual}")
        failed += not r.ok
    print(f"{len(results) - failed}/{len(results)} reference checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votepower",
        description="Exact voting-power measures and postulate checking for simple voting games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file against the game axioms")
    _add_game_source(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("power", help="per-player power under the chosen measures")
    _add_game_source(p)
    p.add_argument("--measure", action="append", choices=[m.value for m in Measure])
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--max-n", type=int, default=None, help="override the enumeration cap")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("check", help="evaluate postulates, with witnesses")
    _add_game_source(p)
    p.add_argument(
        "--postulate",
        action="append",
        required=True,
        choices=[x.value for x in Postulate],
    )
    p.add_argument("--measure", action="append", choices=[m.value for m in Measure])
    p.add_argument("--bloc", help="bloc members, e.g. '1,2' (1-based)")
    p.add_argument("--lead", type=int, help="bloc lead (1-based, default lowest)")
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"), help="ordered pair (1-based)")
    p.add_argument("--bloc-cap", type=int, default=None, help="largest bloc size to enumerate")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bloc", help="form a bloc by vote donation and emit the reduced game")
    _add_game_source(p)
    p.add_argument("--members", required=True, help="bloc members, e.g. '1,2' (1-based)")
    p.add_argument("--lead", type=int, default=None, help="lead member (1-based, default lowest)")
    p.add_argument("--out", help="write the game JSON here instead of stdout")
    p.set_defaults(func=cmd_bloc)

    p = sub.add_parser("add-blocker", help="append a YES- or NO-blocker to a game")
    _add_game_source(p)
    p.add_argument("--side", choices=["yes", "no"], required=True)
    p.add_argument("--out", help="write the game JSON here instead of stdout")
    p.set_defaults(func=cmd_add_blocker)

    p = sub.add_parser("search", help="scan a game space for a postulate counterexample")
    p.add_argument("--space", choices=["exhaustive", "grid", "random"], required=True)
    p.add_argument("--n", type=int, required=True, help="player count")
    p.add_argument("--max-weight", type=int, default=3)
    p.add_argument("--count", type=int, default=100, help="random space size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measure", choices=[m.value for m in Measure], required=True)
    p.add_argument("--postulate", choices=[x.value for x in Postulate], required=True)
    p.add_argument("--bloc-cap", type=int, default=None)
    p.add_argument("--max-games", type=int, default=None)
    p.add_argument("--jsonl", help="append any counterexample report to this JSON-lines file")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reproduce", help="re-derive the published reference values")
    p.add_argument("--all", action="store_true", help="run every group (default)")
    p.add_argument("--theorem", action="append", type=int, choices=range(1, 10))
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VotePowerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
