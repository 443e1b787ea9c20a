"""Exception hierarchy.

Precondition violations subclass ``ValueError`` so callers that only care
about "bad input" can catch that.
"""


class FoldcubeError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(FoldcubeError, ValueError):
    """Dimension or bit position outside the supported range."""


class NotAnFqEdge(FoldcubeError, ValueError):
    """Vertex pair that is not an edge of the folded hypercube."""


class EdgeNotPresent(FoldcubeError, ValueError):
    def __init__(self, edge, message=None):
        self.edge = edge
        super().__init__(message or f"edge {edge} is not present in the graph")


class NotAPerfectMatching(FoldcubeError, ValueError):
    pass


class NoPerfectMatching(FoldcubeError, ValueError):
    pass


class NotMixed(FoldcubeError, ValueError):
    """Matching is E_c or a single dimension class, so no witness exists."""


class MatchingFormatError(FoldcubeError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceGuardExceeded(FoldcubeError):
    """Input exceeds a configured resource guard.

    ``guard`` names the limit and ``limit`` carries its configured value, so
    the caller can report exactly which knob to turn.
    """

    def __init__(self, guard, limit, actual):
        self.guard = guard
        self.limit = limit
        self.actual = actual
        super().__init__(f"{guard} exceeded: got {actual}, limit is {limit}")


# Name used for the enumeration guard.
ExhaustionLimitExceeded = ResourceGuardExceeded


class VerificationError(FoldcubeError):
    """A machine check disagreed with the expected theorem statement."""

    def __init__(self, message, matching=None, artifacts=None):
        self.matching = matching
        self.artifacts = artifacts or {}
        super().__init__(message)
