"""Exception hierarchy shared by every module."""


class ConceptSpaceError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class SpaceMismatchError(ConceptSpaceError, ValueError):
    """Two objects that must share a conceptual space do not."""


class InvalidSpaceError(ConceptSpaceError, ValueError):
    """A space, dimension, domain or point violates its invariants."""


class UnsupportedMetricError(ConceptSpaceError):
    """The requested operation is undefined for the configured metric."""


class EmptyConjunctionError(ConceptSpaceError):
    """Two concepts have no common instances."""


class SamplingError(ConceptSpaceError):
    """Rejection sampling could not find enough member points."""

    def __init__(self, message, accepted=0):
        self.accepted = accepted
        super().__init__(message)


class CspaceParseError(Exception):
    """Syntax or reference error in CSPACE text (CLI exit code 2).

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message, line=0, column=0, source="<text>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")
