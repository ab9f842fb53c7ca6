"""Exception types shared across the package."""


class CodeLpError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(CodeLpError, ValueError):
    """Operands have incompatible lengths or shapes."""


class InvalidGroupElementError(CodeLpError, ValueError):
    """A matrix that must be invertible over F2 is singular."""


class OracleLimitError(CodeLpError, ValueError):
    """A brute-force object would exceed the configured oracle size limit."""


class CapabilityError(CodeLpError, ValueError):
    """Parameters are outside the supported desk-scale range."""


class ModelError(CodeLpError, ValueError):
    """An LP model or solve request is malformed."""
