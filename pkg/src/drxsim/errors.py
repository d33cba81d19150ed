class DrxSimError(Exception):
    """Base class for all errors raised by drxsim."""


class InvalidParameterError(DrxSimError, ValueError):
    pass


class ConfigError(DrxSimError, ValueError):
    pass


class InvariantViolation(DrxSimError, RuntimeError):
    """Internal bookkeeping breach. Always carries the TTI index in its message."""


class QueueInstabilityError(DrxSimError, RuntimeError):
    pass


class CheckpointError(DrxSimError):
    pass


class CheckpointMismatchError(CheckpointError):
    pass


class TrainingDivergedError(DrxSimError, FloatingPointError):
    pass


class EmptyMemoryError(DrxSimError, IndexError):
    pass


class ResultsWriteError(DrxSimError, OSError):
    pass
