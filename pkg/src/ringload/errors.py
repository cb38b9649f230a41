"""Exception taxonomy.

RingLoadingError is the common base; ValidationError covers everything a
malformed instance or routing can trigger.  InternalGuaranteeViolation is
special: it fires only if a certified bound of the approximation algorithm
fails to hold, which indicates a bug in this package, never bad input.
"""


class RingLoadingError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RingLoadingError):
    """An instance or routing violates a structural invariant."""


class NodeOutOfRange(ValidationError):
    pass


class NegativeDemand(ValidationError):
    pass


class SplitExceedsDemand(ValidationError):
    pass


class IndexMismatch(ValidationError):
    pass


class InstanceSyntaxError(RingLoadingError):
    """The instance document is not well-formed JSON."""


class SchemaError(RingLoadingError):
    """The instance document parses but has missing or ill-typed fields."""


class NotParallel(RingLoadingError):
    """Uncrossing was requested for a pair of crossing demands."""


class LengthMismatch(RingLoadingError):
    """A routing vector does not match the instance it is applied to."""


class StartOutOfRange(RingLoadingError):
    """Forward greedy start point outside the admissible interval."""


class EndOutOfRange(RingLoadingError):
    """Backward greedy end point outside the admissible interval."""


class OwnerMismatch(RingLoadingError):
    """Two patterns of different instances were combined."""


class OddEpsilon(RingLoadingError):
    """A crossover shift of half an odd grid value is not representable."""


class InvalidWitness(RingLoadingError):
    """A closeness witness does not match the patterns it claims to relate."""


class NotMedium(RingLoadingError):
    """The selected demand is not of medium size for the given margin."""


class MediumDemandPresent(RingLoadingError):
    """The small/big algorithm was invoked on an instance with a medium demand."""


class InternalGuaranteeViolation(RingLoadingError):
    """A certified performance bound failed; this is a bug, not bad input."""


class TooManyDemands(RingLoadingError):
    """Brute-force enumeration over 2^k routings exceeds the configured cap."""


class UnknownName(RingLoadingError):
    """No built-in instance with the requested name."""


class InfeasibleParams(RingLoadingError):
    """Generator or search parameters admit no instance."""


class StepMismatch(RingLoadingError):
    """A point difference matches neither +v_k nor -u_k."""
