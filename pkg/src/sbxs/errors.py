"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical/physical domain of an operation."""


class ChannelClosedError(DomainError):
    """Requested photon-exchange channel is kinematically closed."""

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"channel n={n} is closed")


class ConvergenceError(RuntimeError):
    """An iterative evaluation failed to reach the requested accuracy."""


class LinearPathUnstableError(RuntimeError):
    """The linear-polarization formula refuses: |v| below its stability
    floor. Callers must fall back to the general evaluation path."""


class OracleInconsistencyError(RuntimeError):
    """The spinor-sum and trace forms of the oracle disagree; indicates a
    convention bug, never a tolerance issue."""


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""
