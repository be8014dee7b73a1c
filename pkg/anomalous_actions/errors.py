class InvalidArgumentError(ValueError):
    """Raised when an argument is outside the domain of an operation."""


class PreconditionViolation(ValueError):
    """Raised when an input fails a mathematical precondition (e.g. a cocycle condition)."""


class ResourceLimitError(RuntimeError):
    """Raised when a linear system or table would exceed the configured guardrail."""


class ScenarioError(ValueError):
    """Raised when a scenario, group or cochain description cannot be parsed or resolved."""


class ConstructionInvariantError(RuntimeError):
    """Raised when an identity that holds by construction fails, which signals a bug."""
