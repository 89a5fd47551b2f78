"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class SingularityError(DomainError):
    """Evaluation was requested at a singular point of a kernel."""


class ConfigurationError(ValueError):
    """A geometry or run configuration is unusable."""


class ParseError(ConfigurationError):
    """Malformed config text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UsageError(ValueError):
    """The command line asked for something the tool cannot do."""


class PathError(ValueError):
    """An integration path touches the excluded tube region or crosses the film."""


class SplitError(RuntimeError):
    """The potential split failed to confine the residual field."""


class UnsupportedOrderError(ValueError):
    """A series term beyond the configured maximal order was requested."""


class AccuracyError(RuntimeError):
    """A quadrature or iteration failed to reach its accuracy target."""


class DivergenceWarning(UserWarning):
    """The empirical term-ratio test suggests the expansion may diverge."""
