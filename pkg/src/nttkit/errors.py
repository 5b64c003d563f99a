"""Exception types shared across the package."""


class NttError(Exception):
    """Base class for nttkit errors."""


class NotPrime(NttError):
    """Modulus failed the deterministic primality check."""


class NotPowerOfTwo(NttError):
    """Vector length (or size argument) is not a power of two."""


class SizeNotSupported(NttError):
    """Transform size does not divide p - 1, so no root of unity exists."""


class SizeMismatch(NttError):
    """Input length disagrees with the table or plan size."""


class BadFactorization(NttError):
    """Six-step split sizes do not multiply to the transform size."""


class UnsupportedVariant(NttError):
    """Operation does not support the requested algorithm variant."""


class SearchBudgetExceeded(NttError):
    """Partition search ran out of its node budget before concluding."""


class InvalidSize(NttError):
    """Benchmark size is unusable with the selected prime."""
