"""Exceptions raised by the decoder library."""


class DecoderError(Exception):
    """Base class for decoder library errors."""


class DimensionMismatchError(DecoderError, ValueError):
    """Operands act on different numbers of qubits."""


class InvalidTableauError(DecoderError, ValueError):
    """A tableau or tau matrix violates the symplectic or commutation pattern."""


class DenseCapExceededError(DecoderError, ValueError):
    """The dense simulator was asked for more qubits than the configured cap."""


class EnumerationLimitError(DecoderError, ValueError):
    """An exact Pauli-group sum would exceed the enumeration limit."""


class NotPreservedError(DecoderError, ValueError):
    """A Pauli string is not mapped to a single Pauli string by the circuit."""


class DecompositionError(DecoderError, RuntimeError):
    """The residual of a decomposition is not the identity on the claimed block."""


class ProjectionError(DecoderError, RuntimeError):
    """A projection in the dense decoding protocol annihilated the state."""


class LearningError(DecoderError, RuntimeError):
    """The learning loop reached an inconsistent state (e.g. no rank growth)."""
