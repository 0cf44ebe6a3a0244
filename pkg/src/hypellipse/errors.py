"""Exception hierarchy shared by all modules."""


class HypEllipseError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(HypEllipseError):
    """An argument violates a documented precondition."""


class OutOfDomainError(HypEllipseError):
    """A numeric argument lies outside the domain of the function."""


class NotAnEllipseError(HypEllipseError):
    """The given symmetric matrix does not describe a hyperbolic ellipse."""


class DegenerateInputError(HypEllipseError):
    """The input point set is not full-dimensional."""


class InfeasibleError(HypEllipseError):
    """No ellipse of the requested family can contain the input."""


class InvalidConfigurationError(HypEllipseError):
    """A geometric configuration does not admit the requested construction."""
