"""Exception types shared across the toolkit.

Validation and domain problems subclass ValueError so plain try/except
ValueError keeps working; solver failures subclass RuntimeError. The CLI
maps everything except solver/internal failures to exit code 1.
"""


class PubTfpError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(PubTfpError, ValueError):
    """A technology, bundle, price, or scheme violates its invariants."""


class DomainError(PubTfpError, ValueError):
    """An operation was evaluated outside its mathematical domain."""


class NoConvergenceError(PubTfpError, RuntimeError):
    """An iterative solver hit its iteration cap without converging."""


class NoInteriorMpssError(PubTfpError):
    """The technology has no interior most-productive scale size on the ray."""


class AlreadyEfficientError(PubTfpError):
    """The starting input mix already satisfies the cost-minimizing condition."""


class PricesNotDominatedError(PubTfpError):
    """The after-side prices are not strictly lower in every component."""


class MarkupNotReducedError(PubTfpError):
    """The after-side markups are not strictly lower for every output."""


class ScenarioError(PubTfpError):
    """A scenario definition or scenario file is malformed."""


class PanelSchemaError(PubTfpError):
    """A panel file does not match the documented column schema."""


class SeriesError(PubTfpError):
    """A panel series violates ordering requirements (gaps, duplicates)."""


class MissingBaseYearError(SeriesError):
    """The requested base year is absent from a series."""
