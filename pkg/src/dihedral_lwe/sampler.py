"""Uniform, Gaussian and LWE samples over R_q.

Widths are standard deviations in coefficient units.  A Gaussian of relative
width alpha in the exp(-pi (x/alpha)^2) convention has standard deviation
alpha / sqrt(2 pi); scaled by q that is ``alpha_to_sigma(alpha, q)``.

The discretized error assigns residue k the mass of the continuous Gaussian
(reduced mod q) on the arc [k - 1/2, k + 1/2).  ``integrated`` mode tabulates
those masses and inverse-samples; ``rounded`` mode draws a continuous value
and rounds it.  Both describe the same distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import ndtr

from .group_ring import RingElement, normal_form_transform, normal_form_transform_left
from .negacyclic import Poly

TAIL_SIGMAS = 14.0


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic stream for a 64-bit seed (Philox-4x64 counter cipher)."""
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(seed))


def alpha_to_sigma(alpha: float, q: int) -> float:
    return alpha * q / math.sqrt(2 * math.pi)


def sigma_to_alpha(sigma: float, q: int) -> float:
    return sigma * math.sqrt(2 * math.pi) / q


@dataclass(frozen=True, eq=False)
class ErrorDist:
    sigma: float
    q: int
    m: int
    mode: str = "integrated"

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.mode not in ("rounded", "integrated"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def from_params(cls, p, mode: str = "integrated") -> ErrorDist:
        return cls(p.sigma, p.q, p.m, mode)

    @property
    def n(self) -> int:
        return 2 * self.m

    @cached_property
    def support(self) -> np.ndarray:
        """Centered residues carrying the table's mass."""
        half = (self.q - 1) // 2
        w = min(half, int(math.ceil(TAIL_SIGMAS * self.sigma)) + 1)
        return np.arange(-w, w + 1)

    @cached_property
    def pmf(self) -> np.ndarray:
        """Probability of each value in ``support``; symmetric by construction."""
        c = self.support
        if self.sigma == 0:
            return (c == 0).astype(float)
        pos = np.arange(0, c[-1] + 1, dtype=float)
        # arcs wrap around the torus every q
        reach = int(math.ceil(TAIL_SIGMAS * self.sigma / self.q)) + 1
        mass = np.zeros_like(pos)
        for j in range(-reach, reach + 1):
            lo = (pos - 0.5 + j * self.q) / self.sigma
            hi = (pos + 0.5 + j * self.q) / self.sigma
            mass += ndtr(-lo) - ndtr(-hi)
        return np.concatenate([mass[:0:-1], mass])

    def residue_pmf(self) -> np.ndarray:
        """Full length-q table: entry k is the probability of residue k."""
        out = np.zeros(self.q)
        np.add.at(out, self.support % self.q, self.pmf)
        return out

    @cached_property
    def _cdf(self) -> np.ndarray:
        cdf = np.cumsum(self.pmf)
        return cdf / cdf[-1]

    def sample_centered(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.sigma == 0:
            return np.zeros(size, dtype=np.int64)
        if self.mode == "rounded":
            return np.rint(rng.normal(0.0, self.sigma, size=size)).astype(np.int64)
        idx = np.searchsorted(self._cdf, rng.random(size=size), side="right")
        return self.support[np.minimum(idx, self.support.shape[0] - 1)]

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return self.sample_centered(rng, size) % self.q


@dataclass(frozen=True)
class LweSample:
    a: RingElement
    b: RingElement
    side: str = "left"  # "left": b = s a + e, "right": b = a s + e


def sample_uniform(n: int, q: int, rng: np.random.Generator) -> RingElement:
    return RingElement.from_embedding(rng.integers(0, q, size=n, dtype=np.int64), q)


def sample_error(dist: ErrorDist, rng: np.random.Generator) -> RingElement:
    v = dist.sample(rng, dist.n)
    return RingElement(Poly(v[: dist.m], dist.q), Poly(v[dist.m:], dist.q))


def sample_lwe(s: RingElement, dist: ErrorDist, rng: np.random.Generator,
               side: str = "left", return_error: bool = False):
    """a uniform, b = s a + e (side="left") or b = a s + e (side="right")."""
    a = sample_uniform(s.n, s.q, rng)
    e = sample_error(dist, rng)
    if side == "left":
        b = s * a + e
    elif side == "right":
        b = a * s + e
    else:
        raise ValueError(f"unknown side {side!r}")
    sample = LweSample(a, b, side)
    return (sample, e) if return_error else sample


def to_normal_form(samples: tuple[LweSample, LweSample]) -> LweSample:
    """Two samples with a shared secret -> one sample whose secret is the first error."""
    s1, s2 = samples
    if s1.side != s2.side:
        raise ValueError("samples use different multiplication sides")
    if s1.side == "right":
        a, b = normal_form_transform((s1.a, s1.b), (s2.a, s2.b))
    else:
        a, b = normal_form_transform_left((s1.a, s1.b), (s2.a, s2.b))
    return LweSample(a, b, s1.side)
