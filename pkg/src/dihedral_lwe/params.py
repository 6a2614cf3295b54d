"""Parameter sets (n, q, sigma) for the dihedral group-ring scheme.

The ring is R_q = F_q[D_2n] / (r^{n/2} + 1), so every element is a pair of
length ``m = n/2`` polynomials.  Presets pick the smallest prime
``q = 1 (mod 2m)`` at or above ``n^2`` so the negacyclic NTT is available.

The error width is chosen from the decryption-noise budget rather than an
asymptotic formula: the noise ``e*r - s*e1 + e2`` has per-coefficient standard
deviation close to ``sigma^2 * sqrt(2n)``, and we ask that ``TAIL_FACTOR`` such
deviations fit under the ``q/4`` decoding threshold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from sympy import isprime

from .errors import InvalidRank, NoSuitablePrime

TAIL_FACTOR = 8.0
PROFILES = ("toy", "default")


class Violation(str, enum.Enum):
    InvalidRank = "InvalidRank"
    RankMismatch = "RankMismatch"
    NotPrime = "NotPrime"
    ModulusSharesFactorWith2n = "ModulusSharesFactorWith2n"
    ModulusOutOfRange = "ModulusOutOfRange"
    NotNttFriendly = "NotNttFriendly"
    NonPositiveSigma = "NonPositiveSigma"
    ModulusTooLarge = "ModulusTooLarge"


@dataclass(frozen=True)
class ParamSet:
    n: int
    m: int
    q: int
    sigma: float
    ntt_enabled: bool = True
    profile: str = "default"
    security_note: str = field(default="", compare=False)

    @property
    def alpha(self) -> float:
        """Relative width in the exp(-pi (x/alpha)^2) convention."""
        return self.sigma * math.sqrt(2 * math.pi) / self.q

    @property
    def half_q(self) -> int:
        return self.q // 2

    def report(self) -> str:
        lines = [
            f"n={self.n}",
            f"m={self.m}",
            f"q={self.q}",
            f"sigma={self.sigma:.6f}",
            f"alpha={self.alpha:.6e}",
            f"ntt_enabled={str(self.ntt_enabled).lower()}",
            f"profile={self.profile}",
            f"security_note={self.security_note}",
        ]
        return "\n".join(lines)


def is_power_of_two(n: int) -> bool:
    return isinstance(n, int) and n > 0 and n & (n - 1) == 0


def noise_budget_sigma(n: int, q: int, tail: float = TAIL_FACTOR) -> float:
    """Largest error std such that ``tail`` noise deviations stay below q/4."""
    return math.sqrt(q / (4.0 * tail * math.sqrt(2.0 * n)))


def asymptotic_alpha(n: int) -> float:
    """alpha = 1 / (sqrt(n) * log2(n)^2); kept for experiments only.

    At q ~ n^2 this width makes decryption fail for most bits (see
    scripts/failure_rate.py), so no preset uses it.
    """
    return 1.0 / (math.sqrt(n) * math.log2(n) ** 2)


def ntt_prime(modulus: int, start: int, stop: int | None = None) -> int | None:
    """Smallest prime p >= start with p = 1 (mod modulus), or None past stop."""
    p = start + (1 - start) % modulus
    while stop is None or p <= stop:
        if isprime(p):
            return p
        p += modulus
    return None


def build_params(n: int, profile: str = "default", alpha: float | None = None) -> ParamSet:
    if not is_power_of_two(n) or n < 4:
        raise InvalidRank(f"n must be a power of two >= 4, got {n!r}")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    m = n // 2
    notes = ["library-chosen preset, not a vetted security level"]

    if profile == "default":
        q = ntt_prime(2 * m, n * n, 2 * n * n)
        if q is None:
            q = ntt_prime(2 * m, 2 * n * n + 1)
            if q is None:  # pragma: no cover - Dirichlet
                raise NoSuitablePrime(f"no prime = 1 mod {2 * m} found for n={n}")
            notes.append(f"no NTT-friendly prime in [n^2, 2n^2]; fell back to q={q} > 2n^2")
    else:
        q = ntt_prime(2 * m, n * n)

    if alpha is None:
        sigma = noise_budget_sigma(n, q)
        notes.append(f"sigma sized for decryption: {TAIL_FACTOR:g} noise std devs fit under q/4")
    else:
        sigma = alpha * q / math.sqrt(2 * math.pi)
        notes.append(f"caller-supplied alpha={alpha:g}")
    width = sigma * math.sqrt(2 * math.pi)
    floor = math.sqrt(n) * math.sqrt(math.log2(n))
    if width < floor:
        notes.append(f"alpha*q={width:.1f} is below sqrt(n log2 n)={floor:.1f}")
    return ParamSet(n=n, m=m, q=q, sigma=sigma, ntt_enabled=True, profile=profile,
                    security_note="; ".join(notes))


def validate(p: ParamSet) -> list[Violation]:
    out: list[Violation] = []
    if not is_power_of_two(p.n) or p.n < 4:
        out.append(Violation.InvalidRank)
    if p.m * 2 != p.n:
        out.append(Violation.RankMismatch)
    prime = isprime(p.q)
    if not prime:
        out.append(Violation.NotPrime)
    # coprimality and NTT support only mean something for a field modulus
    if prime and math.gcd(p.q, 2 * p.n) != 1:
        out.append(Violation.ModulusSharesFactorWith2n)
    if p.profile == "default":
        if not p.n * p.n <= p.q <= 2 * p.n * p.n:
            out.append(Violation.ModulusOutOfRange)
    elif p.q <= 2 * p.n:
        out.append(Violation.ModulusOutOfRange)
    if p.q >= 2**31:
        out.append(Violation.ModulusTooLarge)
    if prime and p.ntt_enabled and p.m > 0 and p.q % (2 * p.m) != 1:
        out.append(Violation.NotNttFriendly)
    if not p.sigma > 0:
        out.append(Violation.NonPositiveSigma)
    return out


def params_for(n: int, q: int) -> ParamSet:
    """Recover a preset from its (n, q) pair, as stored in file headers.

    The default profile wins when both profiles share a modulus.
    """
    for profile in ("default", "toy"):
        try:
            p = build_params(n, profile)
        except InvalidRank:
            break
        if p.q == q:
            return p
    raise LookupError(f"(n={n}, q={q}) does not match any preset")
