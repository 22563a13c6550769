"""Exception hierarchy shared across the package."""


class SitAssessError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(SitAssessError, ValueError):
    """Vectors of different lengths were compared."""


class DomainError(SitAssessError, ValueError):
    """A numeric argument fell outside its allowed domain."""


class OutOfOrderEventError(SitAssessError, ValueError):
    """An event arrived with a tick earlier than the replay position."""


class ConfigurationError(SitAssessError):
    """The domain configuration is missing or inconsistent."""


class CaptureError(SitAssessError):
    """A scenario capture referenced unknown or dead agents, or empty groups."""


class ScenarioFormatError(SitAssessError, ValueError):
    """A scenario base file failed validation; the message names the offending path."""


class ScriptError(SitAssessError, ValueError):
    """A world script failed validation."""
