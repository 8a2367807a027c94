"""Exception types shared across the toolkit."""


class FootplanError(ValueError):
    """Base class for all toolkit errors."""


class ShapeError(FootplanError):
    """Degenerate geometry input (empty bounds, non-positive resolution)."""


class WorldConsistencyError(FootplanError):
    """World model violates a structural invariant."""


class InvalidSegmentError(FootplanError):
    """A polyline segment is unusable (endpoint in an obstacle, no gate)."""


class InvalidQueryError(FootplanError):
    """A planning query references occupied or out-of-world configurations."""


class FormatError(FootplanError):
    """A JSON document does not match its documented schema."""
