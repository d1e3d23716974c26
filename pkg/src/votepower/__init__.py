"""Exact voting-power analysis for simple voting games.

Computes the two classic decisiveness measures and the recursive (partial
efficacy) measure with exact rational arithmetic, applies the structural
game transforms (bloc formation by vote donation, dummy deletion, added
blockers, relabelling), and mechanically checks the bloc, blocker, share,
minimum-power, added-blocker, dummy, and iso-invariance postulates, with
counterexample search over exhaustive and weighted game spaces.
"""

from .errors import (
    EmptyBlocError,
    GameValidationError,
    NotADummyError,
    NotAntichainError,
    NotAPermutationError,
    NotWeightedError,
    SpaceTooLargeError,
    TooManyPlayersError,
    TrivialGameError,
    VotePowerError,
    WeightSumTooLargeError,
)
from .games import (
    MAX_ENUM_PLAYERS,
    BlocResult,
    Division,
    Explicit,
    SimpleVotingGame,
    Weighted,
    add_no_blocker,
    add_yes_blocker,
    all_divisions,
    delete_dummy,
    describe,
    donate_votes,
    dummies,
    explicit_game,
    explicit_game_from_masks,
    form_bloc,
    game_from_dict,
    game_to_dict,
    is_dummy,
    is_winning,
    load_game,
    min_winning_coalitions,
    no_blockers,
    permute_players,
    save_game,
    same_winning_family,
    validate,
    weighted_game,
    wins,
    yes_blockers,
)
from .measures import (
    Measure,
    PowerReport,
    is_decisive,
    is_no_decisive,
    is_yes_decisive,
    loyal_children,
    pb,
    pb_fast,
    pb_star,
    power,
    power_split,
    rm,
    rm_efficacy,
    rm_path_oracle,
    ss,
    ss_fast,
    ss_star,
)
from .postulates import Postulate, Verdict, check, qualifier_space
from .search import (
    CounterexampleReport,
    ExhaustiveMonotone,
    NoneFound,
    RandomWeighted,
    WeightedGrid,
    dictator,
    enumerate_games,
    find_counterexample,
    paper_corpus,
    unanimity,
)

__version__ = "0.1.0"
