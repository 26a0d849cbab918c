"""Exception hierarchy shared by every module."""


class PersuasionError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class GameError(PersuasionError, ValueError):
    """A game or signal is structurally malformed."""


class UnreachableMessage(PersuasionError, ValueError):
    """A posterior was requested for a message sent with probability zero."""


class AssumptionViolation(PersuasionError):
    """A construction needs an assumption that fails on the given input."""


class NothingToImprove(PersuasionError):
    """The signal handed to ``improve`` is already fully informative."""


class EpsilonError(PersuasionError, ValueError):
    """A perturbation size lies outside its feasible range."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class SizeLimitExceeded(PersuasionError):
    """An exact enumeration would exceed its configured bound."""

    def __init__(self, message, count, bound):
        super().__init__(message)
        self.count = count
        self.bound = bound
