"""Exception hierarchy shared by all modules."""


class LinpacketError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(LinpacketError, ValueError):
    """A parameter, scenario value or constructed object violates an invariant."""


class ParseError(LinpacketError, ValueError):
    """A scenario file could not be parsed."""


class OutOfTabulatedRange(LinpacketError):
    """Evaluation time lies outside the samples of a tabulated force."""


class QuadratureNonConvergence(LinpacketError):
    """Adaptive quadrature exhausted its depth budget before meeting tolerance."""


class CausticReached(LinpacketError):
    """Evaluation time is at or beyond the guard around the caustic t* = m*A0/B0."""


class LeakingState(LinpacketError):
    """Grid amplitudes at the domain boundary exceed the boundary tolerance."""


class TruncationTooCoarse(LinpacketError):
    """Weight function is not negligible at the lambda-domain endpoints."""


class InternalCheckError(LinpacketError):
    """A computed result violated an internal consistency bound."""
