"""Elements and arithmetic of R_q = F_q[D_2n] / (r^{n/2} + 1).

An element is ``f(r) + s*g(r)`` with ``f, g`` in S_q = F_q[x]/(x^m + 1),
m = n/2.  Its coefficient embedding is ``(a_0..a_{m-1}, b_0..b_{m-1})`` on the
basis ``1, r, ..., r^{m-1}, s, s*r, ..., s*r^{m-1}``.

The relations ``s^2 = 1`` and ``s r s = r^{-1}`` give ``s f(r) s = f(r^{-1})``,
which is the involution of S_q.  Multiplication therefore splits into four
negacyclic products:

    (f1 + s f2)(f3 + s f4) = (f1 f3 + f2~ f4) + s (f2 f3 + f1~ f4)

where ``~`` is the involution.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NotInvertible, OracleSizeExceeded
from .negacyclic import (
    Poly,
    ntt_available,
    ntt_tables,
    poly_add,
    poly_involution,
    poly_inverse,
    poly_mul,
    poly_neg,
    poly_sub,
)

ORACLE_MAX_N = 64
INT_COEFF_BOUND = 2**24


@dataclass(frozen=True, eq=False)
class RingElement:
    f: Poly
    g: Poly

    def __post_init__(self):
        if self.f.q != self.g.q or self.f.m != self.g.m:
            raise DimensionMismatch("f and g must share m and q")

    @property
    def q(self) -> int:
        return self.f.q

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def n(self) -> int:
        return 2 * self.f.m

    # constructors

    @classmethod
    def from_coeffs(cls, f, g, q: int) -> RingElement:
        return cls(Poly(np.asarray(f), q), Poly(np.asarray(g), q))

    @classmethod
    def from_embedding(cls, vec, q: int) -> RingElement:
        vec = np.asarray(vec, dtype=np.int64)
        m = vec.shape[0] // 2
        return cls(Poly(vec[:m], q), Poly(vec[m:], q))

    @classmethod
    def zero(cls, n: int, q: int) -> RingElement:
        return cls(Poly.zero(n // 2, q), Poly.zero(n // 2, q))

    @classmethod
    def one(cls, n: int, q: int) -> RingElement:
        return cls(Poly.one(n // 2, q), Poly.zero(n // 2, q))

    @classmethod
    def rotation(cls, n: int, q: int, power: int = 1) -> RingElement:
        """r^power."""
        return cls(Poly.monomial(power, n // 2, q), Poly.zero(n // 2, q))

    @classmethod
    def reflection(cls, n: int, q: int, power: int = 0) -> RingElement:
        """s * r^power."""
        return cls(Poly.zero(n // 2, q), Poly.monomial(power, n // 2, q))

    @classmethod
    def basis(cls, n: int, q: int) -> list[RingElement]:
        """The monomials 1, r, ..., r^{m-1}, s, s r, ..., s r^{m-1}."""
        m = n // 2
        return [cls.rotation(n, q, i) for i in range(m)] + [cls.reflection(n, q, i) for i in range(m)]

    # views

    def embed(self) -> np.ndarray:
        return np.concatenate([self.f.coeffs, self.g.coeffs])

    def centered(self) -> np.ndarray:
        return np.concatenate([self.f.centered(), self.g.centered()])

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    def __repr__(self):
        return f"RingElement(f={self.f.coeffs.tolist()}, g={self.g.coeffs.tolist()}, q={self.q})"

    def __add__(self, other):
        return gr_add(self, other)

    def __sub__(self, other):
        return gr_sub(self, other)

    def __neg__(self):
        return gr_neg(self)

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return gr_mul(self, other)
        return gr_scalar_mul(other, self)

    def __rmul__(self, other):
        return gr_scalar_mul(other, self)


def _check(x: RingElement, y: RingElement):
    if x.q != y.q or x.m != y.m:
        raise DimensionMismatch(f"(n={x.n}, q={x.q}) vs (n={y.n}, q={y.q})")


def gr_add(x: RingElement, y: RingElement) -> RingElement:
    _check(x, y)
    return RingElement(poly_add(x.f, y.f), poly_add(x.g, y.g))


def gr_sub(x: RingElement, y: RingElement) -> RingElement:
    _check(x, y)
    return RingElement(poly_sub(x.f, y.f), poly_sub(x.g, y.g))


def gr_neg(x: RingElement) -> RingElement:
    return RingElement(poly_neg(x.f), poly_neg(x.g))


def gr_scalar_mul(c: int, x: RingElement) -> RingElement:
    c = int(c) % x.q
    return RingElement(Poly(x.f.coeffs * c, x.q), Poly(x.g.coeffs * c, x.q))


def gr_involution_s(x: RingElement) -> RingElement:
    """Conjugation by s: s (f + s g) s = f~ + s g~."""
    return RingElement(poly_involution(x.f), poly_involution(x.g))


def gr_mul(x: RingElement, y: RingElement, mode: str = "auto") -> RingElement:
    """Four negacyclic products and two involutions.

    ``mode`` is ``auto``, ``ntt`` or ``schoolbook``; ``ntt`` raises
    NttUnavailable when q is not 1 mod 2m.
    """
    _check(x, y)
    if mode == "auto":
        mode = "ntt" if ntt_available(x.m, x.q) else "schoolbook"
    if mode == "ntt":
        t = ntt_tables(x.m, x.q)
        rf, rg = _kernels.dihedral_mul_ntt(
            x.f.coeffs, x.g.coeffs, y.f.coeffs, y.g.coeffs,
            t.zetas, t.zetas_shoup, t.izetas, t.izetas_shoup, t.m_inv, t.m_inv_shoup, t.conj, x.q,
        )
        return RingElement(Poly(rf, x.q), Poly(rg, x.q))
    f1, f2, f3, f4 = x.f, x.g, y.f, y.g
    f1s, f2s = poly_involution(f1), poly_involution(f2)
    rf = poly_add(poly_mul(f1, f3, mode), poly_mul(f2s, f4, mode))
    rg = poly_add(poly_mul(f2, f3, mode), poly_mul(f1s, f4, mode))
    return RingElement(rf, rg)


def central_norm(x: RingElement) -> Poly:
    """N(x) = f f~ - g~ g, the element with x * (f~ - s g) = N(x)."""
    return poly_sub(poly_mul(x.f, poly_involution(x.f)), poly_mul(poly_involution(x.g), x.g))


def gr_inverse(x: RingElement) -> RingElement:
    """(f~ - s g) N^{-1}; N is central and fixed by the involution."""
    try:
        n_inv = poly_inverse(central_norm(x))
    except NotInvertible as exc:
        raise NotInvertible(f"{x!r} is not a unit: {exc}") from None
    return RingElement(poly_mul(poly_involution(x.f), n_inv), poly_neg(poly_mul(x.g, n_inv)))


def is_unit(x: RingElement) -> bool:
    try:
        gr_inverse(x)
    except NotInvertible:
        return False
    return True


def coeff_norm(x: RingElement, kind: str = "l2") -> float:
    v = x.centered().astype(float)
    if kind == "l2":
        return float(np.sqrt(v @ v))
    if kind == "linf":
        return float(np.abs(v).max(initial=0.0))
    raise ValueError(f"unknown norm {kind!r}")


# Cayley-table oracle --------------------------------------------------------


@lru_cache(maxsize=None)
def dihedral_cayley(n: int) -> np.ndarray:
    """Cayley table of D_2n; element j*n + k stands for s^j r^k.

    s^j1 r^k1 * s^j2 r^k2 = s^(j1+j2) r^(k2 + (-1)^j2 k1), from r^k s = s r^{-k}.
    """
    idx = np.arange(2 * n)
    j, k = idx // n, idx % n
    j1, j2 = j[:, None], j[None, :]
    k1, k2 = k[:, None], k[None, :]
    jj = (j1 + j2) % 2
    kk = (k2 + np.where(j2 == 1, -k1, k1)) % n
    table = jj * n + kk
    table.flags.writeable = False
    return table


def _lift_to_group(vec: np.ndarray, n: int) -> np.ndarray:
    m = n // 2
    full = np.zeros(2 * n, dtype=vec.dtype)
    full[:m] = vec[:m]
    full[n:n + m] = vec[m:]
    return full


def _fold_quotient(full: np.ndarray, n: int) -> np.ndarray:
    # r^{m+k} = -r^k in the quotient
    m = n // 2
    rot = full[:m] - full[m:n]
    ref = full[n:n + m] - full[n + m:]
    return np.concatenate([rot, ref])


def group_ring_convolve(u: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    """Product in Z[D_2n] straight from the multiplication table."""
    if n > ORACLE_MAX_N:
        raise OracleSizeExceeded(f"oracle limited to n <= {ORACLE_MAX_N}")
    table = dihedral_cayley(n)
    out = np.zeros(2 * n, dtype=np.result_type(u, v))
    np.add.at(out, table.ravel(), np.multiply.outer(u, v).ravel())
    return out


def gr_mul_oracle(x: RingElement, y: RingElement) -> RingElement:
    _check(x, y)
    n, q = x.n, x.q
    if n > ORACLE_MAX_N:
        raise OracleSizeExceeded(f"oracle limited to n <= {ORACLE_MAX_N}")
    dtype = np.int64 if q < 2**26 else object
    u = _lift_to_group(x.embed().astype(dtype), n)
    v = _lift_to_group(y.embed().astype(dtype), n)
    return RingElement.from_embedding(np.asarray(_fold_quotient(group_ring_convolve(u, v, n), n) % q, dtype=np.int64), q)


# Integer (no wrap) arithmetic ------------------------------------------------


def _int_negacyclic(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = a.shape[0]
    full = np.convolve(a, b)
    out = full[:m].copy()
    out[: m - 1] -= full[m:]
    return out


def _int_involution(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[0] = a[0]
    out[1:] = -a[:0:-1]
    return out


def int_mul(xv, yv) -> np.ndarray:
    """Product of two integer coefficient embeddings in R = Z[D_2n]/(r^{n/2}+1).

    No modular reduction is applied.  Coefficients are capped at 2^24 in
    magnitude so the int64 accumulation cannot overflow.
    """
    xv = np.asarray(xv, dtype=np.int64)
    yv = np.asarray(yv, dtype=np.int64)
    if xv.shape != yv.shape or xv.shape[0] % 2:
        raise DimensionMismatch("embeddings must have equal even length")
    bound = max(np.abs(xv).max(initial=0), np.abs(yv).max(initial=0))
    if bound >= INT_COEFF_BOUND or xv.shape[0] > 2**14:
        raise OverflowError("integer product limited to |coeff| < 2^24 and n <= 2^14")
    m = xv.shape[0] // 2
    f1, f2, f3, f4 = xv[:m], xv[m:], yv[:m], yv[m:]
    rf = _int_negacyclic(f1, f3) + _int_negacyclic(_int_involution(f2), f4)
    rg = _int_negacyclic(f2, f3) + _int_negacyclic(_int_involution(f1), f4)
    return np.concatenate([rf, rg])


# Regular to normal form ------------------------------------------------------


def normal_form_transform(sample1, sample2):
    """(a1, b1), (a2, b2) with b = a s + e  ->  (a2 a1^{-1}, a2 a1^{-1} b1 - b2).

    The result satisfies b' = a' e1 - e2, so the first error plays the secret.
    """
    (a1, b1), (a2, b2) = sample1, sample2
    a_prime = gr_mul(a2, gr_inverse(a1))
    return a_prime, gr_sub(gr_mul(a_prime, b1), b2)


def normal_form_transform_left(sample1, sample2):
    """Mirror image for b = s a + e: (a1^{-1} a2, b1 a1^{-1} a2 - b2), and b' = e1 a' - e2."""
    (a1, b1), (a2, b2) = sample1, sample2
    a_prime = gr_mul(gr_inverse(a1), a2)
    return a_prime, gr_sub(gr_mul(b1, a_prime), b2)
