"""Exception types shared across the package."""


class DhondtXAIError(Exception):
    """Base class for all domain errors raised by this package."""


# --- apportionment ---------------------------------------------------------

class EmptyElectorate(DhondtXAIError):
    """No entities, or every entity has zero votes."""


class InvalidSeatCount(DhondtXAIError):
    """Requested seat count is below one."""


# --- electoral pipeline ----------------------------------------------------

class UnknownFeature(DhondtXAIError):
    """A referenced feature name is not present in the importance vector."""


class EmptyResult(DhondtXAIError):
    """An operation removed every feature."""


class OverlappingAlliances(DhondtXAIError):
    """Two alliances share a member, or an alliance name collides."""


class ZeroTotalImportance(DhondtXAIError):
    """The importance scores sum to zero, so votes cannot be distributed."""


class AllBelowThreshold(DhondtXAIError):
    """Every entity fell below the electoral threshold."""


# --- tree training ---------------------------------------------------------

class EmptyNode(DhondtXAIError):
    """Impurity requested for a node with no samples."""


class CountMismatch(DhondtXAIError):
    """Child sample counts do not add up to the parent count."""


# --- statistics ------------------------------------------------------------

class LengthMismatch(DhondtXAIError):
    """Paired vectors differ in length."""


class TooFewPoints(DhondtXAIError):
    """Fewer than three points; rank correlation is undefined."""


# --- reporting -------------------------------------------------------------

class MissingDirection(DhondtXAIError):
    """A seated entity has no correlation direction for the bar chart."""


# --- file ingestion --------------------------------------------------------

class MissingColumn(DhondtXAIError):
    """A required CSV column is absent."""


class NonNumericFeature(DhondtXAIError):
    """A feature column has more than two distinct non-numeric values."""


class EmptyFile(DhondtXAIError):
    """An input file has no data rows."""


class NegativeImportance(DhondtXAIError):
    """An importance file contains a negative score."""


class DuplicateFeature(DhondtXAIError):
    """An importance file lists the same feature twice."""


# --- configuration ---------------------------------------------------------

class ConfigError(DhondtXAIError):
    """A run configuration violates an invariant; message names the field."""
