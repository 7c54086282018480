"""
Exception hierarchy for sensor-bandit
"""


class SensorBanditError(Exception):
    """Base class for every error raised by the package"""


class DomainError(SensorBanditError, ValueError):
    """An argument lies outside its mathematical domain"""


class AlignmentError(DomainError):
    """An action endpoint is not a multiple of the current bin width"""


class UndefinedStatisticError(SensorBanditError, ArithmeticError):
    """A per-bin statistic was requested for a bin that was never sensed"""


class SamplingError(SensorBanditError, FloatingPointError):
    """The truncated Gamma sampler produced a non-finite or impossible draw"""


class SizeGuardError(SensorBanditError):
    """An exponential-time routine was asked for an instance that is too large"""


class ConfigError(SensorBanditError, ValueError):
    """Invalid experiment, policy or rate configuration"""
