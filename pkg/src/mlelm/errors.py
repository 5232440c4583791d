"""Exception hierarchy shared by every module.

The benchmark CLI maps each family to its own exit code, so library code
raises the most specific class that applies.
"""


class MlelmError(Exception):
    """Base class for all errors raised by this package."""


class LabelError(MlelmError, ValueError):
    """Invalid label set, label matrix or label-space mismatch."""


class NumericError(MlelmError, ArithmeticError):
    """Non-finite input or a failed matrix decomposition."""


class ShapeError(MlelmError, ValueError):
    """Array shapes that do not agree with each other or with a model."""


class DataError(MlelmError):
    """A dataset, prediction file or manifest could not be read."""


class ArffError(DataError, ValueError):
    """Malformed ARFF input; carries the offending 1-based line number."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.message = message


class ConfigError(MlelmError, ValueError):
    """Invalid experiment configuration or manifest."""
