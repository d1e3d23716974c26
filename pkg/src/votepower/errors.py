"""Exception types shared across the package."""


class VotePowerError(Exception):
    """Base class for all errors raised by this package."""


class GameValidationError(VotePowerError):
    """A game object violates the simple-voting-game invariants."""


class TrivialGameError(GameValidationError):
    """The empty coalition wins or the grand coalition loses."""


class NotAntichainError(GameValidationError):
    """An explicit rule lists comparable minimal winning coalitions."""


class NotADummyError(VotePowerError):
    """Attempted to delete a player that can swing some division."""


class NotAPermutationError(VotePowerError):
    """The given index sequence is not a permutation of the players."""


class EmptyBlocError(VotePowerError):
    """A bloc must have at least one member."""


class TooManyPlayersError(VotePowerError):
    """The operation would enumerate more divisions than the configured cap."""


class NotWeightedError(VotePowerError):
    """A weighted-rule fast path was called on an explicit-rule game."""


class WeightSumTooLargeError(VotePowerError):
    """The weight total exceeds the dynamic-programming bound."""


class SpaceTooLargeError(VotePowerError):
    """The requested search space exceeds the configured enumeration bounds."""
