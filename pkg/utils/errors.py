"""
Exception hierarchy shared by every gapdex package
"""
from typing import Optional

from config.settings import EXIT_DEGENERATE, EXIT_USAGE


class GapdexError(Exception):
    """Base class; exit_code is what the CLI returns for it"""

    exit_code = EXIT_USAGE


class DomainError(GapdexError, ValueError):
    """Argument outside the mathematical domain of an operation"""


class SizeError(GapdexError, ValueError):
    """Too few observations"""


class DataError(GapdexError, ValueError):
    """Non-finite or unparseable input data"""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IndexRangeError(GapdexError, IndexError):
    """Order-statistic or spacing index out of range"""


class DegenerateSampleError(GapdexError):
    """Zero-variance sample, the standardized components are undefined"""

    exit_code = EXIT_DEGENERATE


class ExclusionError(GapdexError):
    """Too many degenerate Monte Carlo replicates were excluded"""

    exit_code = EXIT_DEGENERATE
