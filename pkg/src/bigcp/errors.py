"""Exception taxonomy shared by the library and the command line."""


class BigcpError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParseError(BigcpError, ValueError):
    """Malformed graph or model file, or unparseable command-line value."""

    exit_code = 1


class ContractViolation(BigcpError, ValueError):
    """A documented precondition of an operation does not hold."""

    exit_code = 2


class InvalidInputError(ContractViolation):
    """Input graph or model is outside the class an operation accepts."""


class OutOfRegionError(ContractViolation):
    """Evaluation point (or model parameter) lies outside the zero-free region."""


class MissingConstantError(ContractViolation):
    """A zero-freeness constant is required but was not supplied."""


class ResourceLimitError(BigcpError, RuntimeError):
    """A configured work or size cap would be exceeded."""

    exit_code = 3
