"""Learning with errors over the dihedral group ring Z_q[D_2n] / (r^{n/2} + 1)."""

from .errors import (
    BadMagic,
    CodecError,
    CoefficientOutOfRange,
    DimensionMismatch,
    GrlweError,
    InvalidRank,
    NoSuitablePrime,
    NotInLattice,
    NotInvertible,
    NttUnavailable,
    OracleSizeExceeded,
    ParamMismatch,
    SingularBasis,
    TruncatedBody,
    UnsupportedVersion,
)
from .group_ring import RingElement, gr_inverse, gr_mul, gr_mul_oracle, int_mul
from .negacyclic import Poly, poly_inverse, poly_mul
from .params import ParamSet, build_params, validate
from .pke import Ciphertext, Plaintext, PublicKey, SecretKey, decrypt, encrypt, keygen
from .sampler import ErrorDist, make_rng
from .spectral import is_invertible_real, matrix_norm, spectral_profile

__version__ = "0.1.0"
