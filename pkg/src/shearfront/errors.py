"""Exception types shared across the package."""


class ShearFrontError(Exception):
    """Base class for all package errors."""


class ConfigError(ShearFrontError):
    """Invalid experiment configuration (maps to CLI exit code 2)."""


class SolveError(ShearFrontError):
    """A nonlinear solve failed to converge or produced an inadmissible state."""

    def __init__(self, message, residual=None, diagnostics=None):
        super().__init__(message)
        self.residual = residual
        self.diagnostics = diagnostics or {}


class EigenError(ShearFrontError):
    """Eigenvalue iteration failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
