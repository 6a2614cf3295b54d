"""Public-key encryption over the dihedral group ring.

Multiplication is non-commutative, so every product keeps the order below;
swapping any factor breaks the cancellation in ``v - s u``:

    keygen:   b = s a + e
    encrypt:  u = a r + e1,  v = b r + e2 + floor(q/2) z
    decrypt:  v - s u = e r - s e1 + e2 + floor(q/2) z
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .group_ring import RingElement
from .params import ParamSet
from .sampler import ErrorDist, sample_error, sample_uniform


@dataclass(frozen=True)
class PublicKey:
    a: RingElement
    b: RingElement
    params: ParamSet


@dataclass(frozen=True)
class SecretKey:
    s: RingElement
    e: RingElement  # unused by decryption; kept for diagnostics
    params: ParamSet


@dataclass(frozen=True)
class Ciphertext:
    u: RingElement
    v: RingElement


@dataclass(frozen=True, eq=False)
class Plaintext:
    bits: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bits, dtype=np.uint8)
        if b.ndim != 1 or (b > 1).any():
            raise ValueError("plaintext must be a vector of bits")
        b.flags.writeable = False
        object.__setattr__(self, "bits", b)

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Plaintext):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())


@dataclass(frozen=True)
class EncryptionRandomness:
    r: RingElement
    e1: RingElement
    e2: RingElement


def encode(z: Plaintext, q: int) -> RingElement:
    """Bits become the coefficient embedding (rotation block first)."""
    return RingElement.from_embedding(z.bits.astype(np.int64), q)


def keygen(params: ParamSet, rng: np.random.Generator, dist: ErrorDist | None = None):
    dist = dist or ErrorDist.from_params(params)
    s = sample_error(dist, rng)
    e = sample_error(dist, rng)
    a = sample_uniform(params.n, params.q, rng)
    b = s * a + e
    return PublicKey(a, b, params), SecretKey(s, e, params)


def encrypt(pk: PublicKey, z: Plaintext, rng: np.random.Generator,
            dist: ErrorDist | None = None, return_randomness: bool = False):
    p = pk.params
    if z.n != p.n:
        raise ValueError(f"plaintext must have {p.n} bits, got {z.n}")
    dist = dist or ErrorDist.from_params(p)
    r = sample_error(dist, rng)
    e1 = sample_error(dist, rng)
    e2 = sample_error(dist, rng)
    return _encrypt_with(pk, z, EncryptionRandomness(r, e1, e2), return_randomness)


def encrypt_with(pk: PublicKey, z: Plaintext, rand: EncryptionRandomness) -> Ciphertext:
    """Deterministic encryption with caller-chosen r, e1, e2."""
    return _encrypt_with(pk, z, rand, False)


def _encrypt_with(pk, z, rand, return_randomness):
    u = pk.a * rand.r + rand.e1
    v = pk.b * rand.r + rand.e2 + pk.params.half_q * encode(z, pk.params.q)
    ct = Ciphertext(u, v)
    return (ct, rand) if return_randomness else ct


def decryption_residue(sk: SecretKey, ct: Ciphertext) -> RingElement:
    return ct.v - sk.s * ct.u


def decode(d: RingElement) -> Plaintext:
    """Bit 0 when a coefficient is closer (mod q) to 0 than to floor(q/2); ties go to 1."""
    q = d.q
    half = q // 2
    c = d.embed()
    to_zero = np.minimum(c, q - c)
    shifted = (c - half) % q
    to_half = np.minimum(shifted, q - shifted)
    return Plaintext((to_zero >= to_half).astype(np.uint8))


def decrypt(sk: SecretKey, ct: Ciphertext) -> Plaintext:
    return decode(decryption_residue(sk, ct))


def noise_term(sk: SecretKey, rand: EncryptionRandomness) -> RingElement:
    """e r - s e1 + e2: what v - s u carries besides the encoded message."""
    return sk.e * rand.r - sk.s * rand.e1 + rand.e2


# failure estimation ----------------------------------------------------------


@dataclass(frozen=True)
class FailureReport:
    trials: int
    message_failures: int
    bit_failures: int
    n: int
    message_rate: float
    message_ci: tuple[float, float]
    bit_rate: float
    bit_ci: tuple[float, float]
    max_noise_linf: int
    noise_below_quarter: int  # trials whose noise stayed under q/4
    quarter_q: float

    def summary(self) -> str:
        return "\n".join([
            f"trials={self.trials}",
            f"message_failures={self.message_failures}",
            f"message_rate={self.message_rate:.3e} ci95=[{self.message_ci[0]:.3e}, {self.message_ci[1]:.3e}]",
            f"bit_rate={self.bit_rate:.3e} ci95=[{self.bit_ci[0]:.3e}, {self.bit_ci[1]:.3e}]",
            f"max_noise_linf={self.max_noise_linf} quarter_q={self.quarter_q:.1f}",
            f"noise_below_quarter={self.noise_below_quarter}/{self.trials}",
        ])


def wilson_interval(k: int, n: int, confidence: float = 0.95) -> tuple[float, float]:
    from scipy.stats import binomtest

    ci = binomtest(k, n).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def estimate_failure_rate(params: ParamSet, trials: int, rng: np.random.Generator,
                          dist: ErrorDist | None = None) -> FailureReport:
    """Monte Carlo over fresh keys and messages."""
    if trials < 100:
        raise ValueError("need at least 100 trials")
    dist = dist or ErrorDist.from_params(params)
    n, q = params.n, params.q
    msg_fail = bit_fail = below = 0
    worst = 0
    for _ in range(trials):
        pk, sk = keygen(params, rng, dist)
        z = Plaintext(rng.integers(0, 2, size=n, dtype=np.uint8))
        ct, rand = encrypt(pk, z, rng, dist, return_randomness=True)
        wrong = int(np.count_nonzero(decrypt(sk, ct).bits != z.bits))
        bit_fail += wrong
        msg_fail += wrong > 0
        linf = int(np.abs(noise_term(sk, rand).centered()).max())
        worst = max(worst, linf)
        below += linf < q / 4
    return FailureReport(
        trials=trials,
        message_failures=msg_fail,
        bit_failures=bit_fail,
        n=n,
        message_rate=msg_fail / trials,
        message_ci=wilson_interval(msg_fail, trials),
        bit_rate=bit_fail / (trials * n),
        bit_ci=wilson_interval(bit_fail, trials * n),
        max_noise_linf=worst,
        noise_below_quarter=below,
        quarter_q=q / 4,
    )


def predicted_noise_std(params: ParamSet) -> float:
    """Per-coefficient std of e r - s e1 + e2 for i.i.d. errors of variance sigma^2 + 1/12."""
    var = params.sigma**2 + 1.0 / 12.0
    return math.sqrt(2 * params.n * var * var + var)
