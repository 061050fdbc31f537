"""Injective permutation-invariant encoders, and their exact decoders, for
multisets of vectors and for dense k-tensors.

Two multiset codecs are provided. The monomial codec sums all monomials of
each element up to total degree N (latent dimension C(N+D, D) - 1) and
decodes through parameterized polynomial roots; it needs no assumptions on
the elements. The identifier codec sums elementwise powers of
x + l(x) * sqrt(-1) (latent dimension 2DN) and decodes row by row; it is
exact on multisets whose distinct elements take distinct identifier values,
which the prime-log identifier guarantees for rational data. Both codecs
support multisets of varying size via sentinel padding, and both extend to
permutation-invariant encodings of k-tensors with distinct node labels.
"""

from . import kernels
from .errors import (
    BadPermutation,
    CapacityExceeded,
    DecodeVerificationFailed,
    ElementOutsideBox,
    EmptyInput,
    IdentifierCollision,
    NoConvergence,
    NonFiniteInput,
    NonRealRoots,
    NotIdentifiable,
    PermcodecError,
    SchemaError,
    SentinelLeak,
    SizeMismatch,
    SizeOverflow,
    TooLargeForFallback,
    UnstableDelta,
)
from .ident_codec import (
    PRIME_LOG,
    IdentLatent,
    Identifier,
    PairwiseLatent,
    constant_identifier,
    decode_ident,
    decode_variable_ident,
    deepsets1d_invert,
    encode_ident,
    encode_pairwise_baseline,
    identifier_prime_log,
    phi_ident,
    shift_encode_ident,
    sortvec_decode,
)
from .multiset import (
    CostMatrix,
    Multiset,
    ScalarProfile,
    canonicalize,
    matching_distance,
    scalar_profile,
)
from .numerics import (
    MonicPoly,
    PowerSums,
    assignment_min_cost,
    monic_roots,
    newton_girard,
    power_sums_from_roots,
)
from .poly_decoder import (
    Separator,
    decode_poly,
    decode_variable,
    find_separator,
    parameterized_roots,
    recover_coordinates,
)
from .poly_encoder import (
    ExponentIndex,
    PolyLatent,
    encode_poly,
    exponent_index,
    moments,
    phi_poly,
    poly_at,
    psi,
    shift_encode,
)
from .tensor_codec import (
    NestedSet,
    NodeLabels,
    Tensor,
    build_S,
    congruent,
    congruent_bruteforce,
    encode_tensor,
    encoder_level_dims,
    latent_dims,
    permute_tensor,
    tensor_from_array,
    tensor_identifier_default,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
