"""Error taxonomy shared across the toolkit.

The CLI maps ConfigError to exit code 1 and DataError to exit code 2.
"""


class EtdmineError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(EtdmineError):
    """Bad parameters, malformed queries, or unusable configuration."""


class DataError(EtdmineError):
    """Broken or inconsistent input data (corpus files, metadata, models)."""
