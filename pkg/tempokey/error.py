class Error(Exception):
    pass

# Validation errors

class ValidationError(Error):
    """Raised when an argument falls outside the range a computation is
    defined on (probabilities outside [0, 1], malformed states, etc.).
    """
    pass

class NonHermitianMatrix(ValidationError):
    """Raised when a matrix that must be Hermitian is asymmetric beyond
    the construction tolerance.
    """
    pass

class NegativeEigenvalue(ValidationError):
    """Raised when a density matrix has an eigenvalue below the spectral
    tolerance, i.e. something other than rounding went wrong.
    """
    pass

class DimensionMismatch(ValidationError):
    pass

class InvalidSymbol(ValidationError):
    """Raised when a symbol is requested that the protocol never sends
    (for example a coherence pulse in the three time-slots protocol).
    """
    pass

class InfeasibleConstraint(ValidationError):
    """Raised when an attack search is asked to reproduce a visibility
    no attack can produce.
    """
    pass

class CounterOverflow(ValidationError):
    pass

class ConfigError(ValidationError):
    """Raised when a run configuration is malformed or carries keys this
    version does not understand.
    """
    pass

# Statistical errors

class EstimationError(Error):
    """Raised when an estimator is evaluated without any data behind it."""
    pass

# Registry errors

class Unregistered(Error):
    """Raised when the user requests an item from the registry that does
    not actually exist.
    """
    pass

class UnregisteredRateModel(Unregistered):
    """Raised when the user requests a rate model from the registry that
    does not actually exist.
    """
    pass

class DeprecatedRateModel(Error):
    """Raised when the user requests a rate model from the registry with an
    older version number than the latest model with the same name.
    """
    pass

class UnregisteredEavesdropper(Unregistered):
    pass

# Output errors

class OutputError(Error):
    """Raised when a result artifact cannot be written."""
    pass
