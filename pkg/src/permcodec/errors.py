"""Exception types shared across the package."""


class PermcodecError(Exception):
    """Base class for all permcodec errors."""


class NonFiniteInput(PermcodecError):
    """An input coordinate is NaN or infinite."""


class EmptyInput(PermcodecError):
    """A multiset with zero elements was supplied."""


class CapacityExceeded(PermcodecError):
    """More elements than the declared capacity."""


class SizeMismatch(PermcodecError):
    """Multiset size does not match the encoder capacity."""


class SizeOverflow(PermcodecError):
    """A requested latent dimension exceeds practical limits."""


class NoConvergence(PermcodecError):
    """Root iteration failed to reach the residual tolerance."""

    def __init__(self, max_iter: int):
        super().__init__(f"root iteration did not converge within {max_iter} iterations")
        self.max_iter = max_iter


class NonRealRoots(PermcodecError):
    """Roots have imaginary parts too large to discard; the latent is not a
    valid encoding of a real multiset."""


class UnstableDelta(PermcodecError):
    """Coordinate recovery disagrees between step sizes delta and delta/2."""


class DecodeVerificationFailed(PermcodecError):
    """Re-encoding the decoded multiset does not reproduce the latent."""


class ElementOutsideBox(PermcodecError):
    """An element lies outside the declared bounding box."""


class SentinelLeak(PermcodecError):
    """After removing sentinel copies, leftover elements sit outside the box."""


class IdentifierCollision(PermcodecError):
    """Two distinct elements share an identifier value; the multiset is not
    identifiable and its latent is ambiguous."""


class NotIdentifiable(PermcodecError):
    """Node labels are not pairwise distinct."""


class BadPermutation(PermcodecError):
    """The supplied index sequence is not a bijection on [N]."""


class TooLargeForFallback(PermcodecError):
    """Brute-force congruence search refused (N too large)."""


class SchemaError(PermcodecError):
    """A JSON document does not match the expected schema."""
