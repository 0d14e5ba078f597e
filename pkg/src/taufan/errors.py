"""Exception hierarchy.

Failures of the form "the theory guarantees X" subclass :class:`TheoryViolation`
and carry a serialisable counterexample in ``details``.
"""


class TaufanError(Exception):
    """Base class for every error raised by the package."""


class PresentationError(TaufanError):
    pass


class NotAdmissible(PresentationError):
    pass


class InconsistentRelation(PresentationError):
    pass


class NotFiniteDimensional(PresentationError):
    def __init__(self, length_bound: int, survivors=()):
        self.length_bound = length_bound
        self.survivors = tuple(survivors)
        super().__init__(
            f"paths of length {length_bound} do not all vanish modulo the relations "
            f"(surviving: {', '.join(self.survivors[:5]) or '?'}); raise length_bound or fix relations"
        )


class DecompositionUncertain(TaufanError):
    pass


class CapExceeded(TaufanError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"more than {cap} support tau-tilting pairs; algebra is probably tau-tilting infinite")


class SVGUnsupportedRank(TaufanError):
    pass


class TheoryViolation(TaufanError):
    """A statement guaranteed by the theory failed to hold."""

    def __init__(self, message: str, details: dict | None = None):
        self.details = details or {}
        super().__init__(message)


class AmbiguousMaximum(TheoryViolation):
    pass


class PairingCheckFailed(TheoryViolation):
    pass


class DependentRays(TheoryViolation):
    pass


class DependentProjection(TheoryViolation):
    pass


class IdentityCheckFailed(TheoryViolation):
    pass


class CrossCheckMismatch(TheoryViolation):
    pass


class MutationFailed(TheoryViolation):
    pass


class CompositionRepresentativeNotFound(TheoryViolation):
    pass


class CompositionAmbiguous(TheoryViolation):
    pass


class RepresentativeDependence(TheoryViolation):
    pass


class MapUndefined(TheoryViolation):
    pass
