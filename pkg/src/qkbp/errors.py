"""Exception types shared across the package."""


class QkbpError(Exception):
    """Base class for all package errors."""


class InvalidNodeSetError(QkbpError):
    """A node set references indices outside the instance."""


class ParameterError(QkbpError):
    """A caller-supplied parameter is out of its valid range."""


class DegenerateInstanceError(QkbpError):
    """The instance cannot be processed (e.g. all node costs are zero)."""


class ContractViolationError(QkbpError):
    """A caller violated an operation contract (e.g. non-monotone lambdas)."""


class InternalInvariantError(QkbpError):
    """An internal consistency check failed; indicates a bug."""


class MismatchError(QkbpError):
    """An envelope was queried against an instance it was not built for."""


class ParseError(QkbpError):
    """An instance file could not be parsed.

    Carries the 1-based line number at which parsing failed.
    """

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
