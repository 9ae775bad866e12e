"""Exception hierarchy shared by all ncdchain modules."""


class NcdChainError(ValueError):
    """Base class for every error raised by ncdchain."""


class InvalidDirectionError(NcdChainError):
    """A measurement direction is not a unit vector."""


class InvalidChainError(NcdChainError):
    """A settings chain was requested with too few settings."""


class EmptySampleError(NcdChainError):
    """An operation needs at least one bit (or one sample) and got none."""


class DimensionError(NcdChainError):
    """Bit strings have incompatible lengths, or a length is not a multiple of k."""


class InvalidBlockSizeError(NcdChainError):
    """Block size k is outside [1, K_MAX]."""


class EmptyAlphabetError(NcdChainError):
    """No block has a strictly positive weight."""


class CorruptStreamError(NcdChainError):
    """A compressed payload cannot be parsed with the given codebook."""


class SampleTooSmallError(NcdChainError):
    """Monte Carlo string length is below the floor needed for meaningful rates."""
