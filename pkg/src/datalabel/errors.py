"""Exception types shared across the toolkit."""

from __future__ import annotations


class DataLabelError(Exception):
    """Base class for all toolkit errors."""


class ParseError(DataLabelError):
    """Raised when CSV input cannot be parsed into a table."""


class ProfileError(DataLabelError):
    """Raised when a column cannot be profiled (empty, unparsable, ...)."""


class LabelBuildError(DataLabelError):
    """Raised when label assembly fails for reasons other than missing manual fields."""


class ConfigError(DataLabelError):
    """Raised for inconsistent maker configuration (bad module list, missing flags)."""
