"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A model parameter or population state violates a declared constraint.

    The message names the violated constraint, e.g. ``0 < c_a < w``.
    """


class ConfigError(ValueError):
    """A run configuration is malformed: unknown key, bad value, or bad file."""


class IntegrationError(RuntimeError):
    """Numerical integration produced a non-finite state.

    The message names the step index at which the failure occurred.
    """
