from __future__ import annotations


class ModelError(ValueError):
    """Base class for every error raised by the simulation packages."""


class ParameterError(ModelError):
    pass


class PoleGuardError(ModelError):
    """Frequency too close to the undamped collective-mode pole at ±ω′."""


class ApproximationDomainError(ModelError):
    pass


class ConfigError(ModelError):
    pass
