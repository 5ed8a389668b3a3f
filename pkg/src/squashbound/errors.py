"""Exception types shared across the package.

The CLI maps each class to a distinct exit code, so library code should
raise the most specific one that applies.
"""


class SquashboundError(Exception):
    """Base class for all errors raised by this package."""


class FileFormatError(SquashboundError):
    """State file is unreadable or does not follow the JSON schema."""


class StateValidationError(SquashboundError):
    """Input fails a physicality or parameter check (norm, trace, PSD, weights, ranges)."""


class LayoutError(StateValidationError):
    """Subsystem indices or dimensions are inconsistent with the layout."""


class DimensionGuardError(StateValidationError):
    """Total Hilbert-space dimension exceeds the configured dense-storage cap."""


class MethodMismatchError(SquashboundError):
    """Requested bound is not defined for the given party count."""


class BracketError(SquashboundError):
    """Root bracket does not enclose a sign change."""


class ExtensionMismatchError(SquashboundError):
    """Extension state does not reduce to the target state under the partial trace."""
