"""Exception hierarchy shared across the package."""


class QThermoError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(QThermoError):
    """Operands have incompatible dimensions."""


class NotHermitianError(QThermoError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NotOrthonormalError(QThermoError):
    """Supplied vector set is not orthonormal within tolerance."""


class BadRankError(QThermoError):
    """Requested rank outside [1, dim]."""


class BadDimensionError(QThermoError):
    """Dimension argument outside the supported range."""


class BadFractionError(QThermoError):
    """Splitting fraction outside [0, 1]."""


class BadGridError(QThermoError):
    """Grid resolution too small."""


class InvalidStateError(QThermoError):
    """Matrix is not a valid density matrix."""


class UnknownExperimentError(QThermoError):
    """Experiment name is not registered."""


class InvalidConfigError(QThermoError):
    """Experiment configuration failed validation."""


class EmptyInputError(QThermoError):
    """An operation requiring non-empty input received none."""
