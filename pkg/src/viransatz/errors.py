"""Exception hierarchy.

Input problems derive from ``InputError``; failures of the numerical
machinery derive from ``NumericalError``. The CLI maps the two families to
distinct exit codes.
"""

from __future__ import annotations


class InputError(ValueError):
    """Invalid user-supplied data."""


class NumericalError(ArithmeticError):
    """A numerical procedure could not deliver a trustworthy result."""


class PotentialError(InputError):
    pass


class OddDegree(PotentialError):
    pass


class NoConfinement(PotentialError):
    pass


class NegativeRadicand(PotentialError):
    pass


class DomainError(InputError):
    pass


class ZeroMoment(InputError):
    pass


class NonPositiveMoment(InputError):
    pass


class NonFiniteIntegrand(NumericalError):
    pass


class BracketFailure(NumericalError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class DomainTooSmall(NumericalError):
    pass


class MaxDepthWarning(RuntimeWarning):
    """Adaptive quadrature hit its depth limit; the returned value is a best effort."""
