"""Exception hierarchy shared by all toricenter modules."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ToricError):
    """Malformed JSON input for a scalar, matrix, arrangement or certificate."""


class FactorizationError(ToricError):
    """A rational modulus has a prime factor beyond the trial-division bound."""


class NonSquare(ToricError):
    pass


class ShapeMismatch(ToricError):
    pass


class SingularMinor(ToricError):
    pass


class NotUnimodular(ToricError):
    pass


class HypothesisError(ToricError):
    """The arrangement does not satisfy ``n >= m >= 1`` with full row rank."""


class EmptyArrangement(HypothesisError):
    pass


class TooManyEquations(HypothesisError):
    pass


class RankDeficient(HypothesisError):
    pass


class ZeroCoordinate(ToricError):
    """A point handed to a map or residual has a zero coordinate."""


class DegenerateEquation(ToricError):
    """An equation with all exponents zero has no subtorus to sample from."""


class PreconditionViolated(ToricError):
    pass
