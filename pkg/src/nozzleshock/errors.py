"""Exception hierarchy.

Every failure the library can raise derives from :class:`ShockError`, so the
CLI can map the whole family onto exit codes and print ``type(err).__name__``.
"""


class ShockError(Exception):
    """Base class for all library errors."""


# gas states
class NotSupersonic(ShockError):
    pass


class JumpRootNotFound(ShockError):
    pass


class EntropyViolation(ShockError):
    pass


class InadmissibleState(ShockError):
    pass


# reduced models
class AlphaOutOfDomain(ShockError):
    pass


class DegenerateWeight(ShockError):
    pass


class NonphysicalPressure(ShockError):
    pass


# alpha solver
class QuadratureFailure(ShockError):
    """Adaptive quadrature hit ``max_depth``.

    ``interval`` is the worst unresolved subinterval in the integration
    variable and ``error`` its local error estimate.
    """

    def __init__(self, message, interval=None, error=None):
        super().__init__(message)
        self.interval = interval
        self.error = error


class NoRootInDomain(ShockError):
    pass


class BracketExpansionExhausted(ShockError):
    pass


# profiles
class NonMonotoneSamples(ShockError):
    pass


class ShootingDiverged(ShockError):
    pass


class StepSizeUnderflow(ShockError):
    pass


class RatioOverflow(ShockError):
    pass


# asymptotics
class XOutOfUnitInterval(ShockError):
    pass
