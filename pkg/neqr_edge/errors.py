"""Exception types raised across the package.

Input and shape problems are ``ValueError`` subclasses; broken internal guarantees are
``RuntimeError`` subclasses so callers can tell a bad request from a bug.
"""


class CapacityError(ValueError):
    """Requested more qubits than the simulator allows."""


class LayoutError(ValueError):
    """Qubit indices or registers are out of range, overlapping, or of mismatched width."""


class ImageFormatError(ValueError):
    """An image file or grid does not satisfy the supported format."""


class ConsistencyError(RuntimeError):
    """A register that should have been cleared still carries probability mass."""
