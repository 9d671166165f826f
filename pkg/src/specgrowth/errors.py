"""Exception types shared across the package.

Each class marks one failure mode of the public API so callers can react
per kind instead of parsing messages.
"""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class RangeError(ValueError):
    """A target value lies outside the range of the sampled function."""


class ConfigError(ValueError):
    """A configuration document is malformed or inconsistent."""


class HypothesisUnmetError(RuntimeError):
    """A check was requested whose mathematical hypotheses fail on the input."""


class SingularityError(ZeroDivisionError):
    """A resolvent evaluation hit a spectral point (distance zero)."""


class ModelUnsuitableError(RuntimeError):
    """The spectral model violates a structural assumption of the operation."""
