"""Arithmetic in the commutative ring S_q = F_q[x]/(x^m + 1).

Both halves of a dihedral ring element live here.  Residues are stored
canonically in [0, q); the centered lift is only taken at norm and decoding
boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NotInvertible, NttUnavailable

MODES = ("auto", "ntt", "schoolbook")


@dataclass(frozen=True, eq=False)
class Poly:
    coeffs: np.ndarray
    q: int

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.q
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def zero(cls, m: int, q: int) -> Poly:
        return cls(np.zeros(m, dtype=np.int64), q)

    @classmethod
    def one(cls, m: int, q: int) -> Poly:
        c = np.zeros(m, dtype=np.int64)
        c[0] = 1
        return cls(c, q)

    @classmethod
    def monomial(cls, i: int, m: int, q: int, coeff: int = 1) -> Poly:
        """coeff * x^i with x^m = -1 applied to any exponent."""
        i %= 2 * m
        c = np.zeros(m, dtype=np.int64)
        c[i % m] = coeff if i < m else -coeff
        return cls(c, q)

    def centered(self) -> np.ndarray:
        c = self.coeffs.copy()
        c[c > self.q // 2] -= self.q
        return c

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.q, self.coeffs.tobytes()))

    def __repr__(self):
        return f"Poly({self.coeffs.tolist()}, q={self.q})"

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_sub(self, other)

    def __neg__(self):
        return poly_neg(self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return Poly(self.coeffs * (int(other) % self.q), self.q)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class NttTables:
    m: int
    q: int
    root: int
    zetas: np.ndarray
    izetas: np.ndarray
    m_inv: int
    zetas_shoup: np.ndarray
    izetas_shoup: np.ndarray
    m_inv_shoup: int
    conj: np.ndarray  # slot holding f(w^-1) for the root w at each slot


def _bit_reverse(k: int, bits: int) -> int:
    return int(format(k, f"0{bits}b")[::-1], 2) if bits else 0


def _find_root(m: int, q: int) -> int:
    """Smallest-base primitive 2m-th root of unity: root^m = -1 (mod q)."""
    e = (q - 1) // (2 * m)
    for base in range(2, q):
        root = pow(base, e, q)
        if pow(root, m, q) == q - 1:
            return root
    raise NttUnavailable(f"no primitive {2 * m}-th root of unity mod {q}")


def ntt_available(m: int, q: int) -> bool:
    return m >= 1 and m & (m - 1) == 0 and q % (2 * m) == 1


@lru_cache(maxsize=None)
def ntt_tables(m: int, q: int) -> NttTables:
    if not ntt_available(m, q):
        raise NttUnavailable(f"q={q} is not 1 mod {2 * m}")
    root = _find_root(m, q)
    bits = m.bit_length() - 1
    zetas = np.array([pow(root, _bit_reverse(k, bits), q) for k in range(m)], dtype=np.int64)
    izetas = np.array([pow(int(z), -1, q) for z in zetas], dtype=np.int64)
    m_inv = pow(m, -1, q)
    zs = np.array([(int(z) << 32) // q for z in zetas], dtype=np.int64)
    izs = np.array([(int(z) << 32) // q for z in izetas], dtype=np.int64)
    # evaluating x and x^{-1} = -x^{m-1} names the root sitting in every slot
    x = np.zeros(m, dtype=np.int64)
    x[1 % m] = 1 if m > 1 else q - 1
    x_inv = np.zeros(m, dtype=np.int64)
    x_inv[m - 1] = q - 1 if m > 1 else 1
    ev = _kernels.ntt_forward(x, zetas, zs, q)
    ev_inv = _kernels.ntt_forward(x_inv, zetas, zs, q)
    slot = {int(v): i for i, v in enumerate(ev)}
    conj = np.array([slot[int(v)] for v in ev_inv], dtype=np.int64)
    tables = (zetas, izetas, zs, izs, conj)
    for t in tables:
        t.flags.writeable = False
    return NttTables(m, q, root, zetas, izetas, m_inv, zs, izs, (m_inv << 32) // q, conj)


def _check(a: Poly, b: Poly):
    if a.q != b.q or a.m != b.m:
        raise DimensionMismatch(f"(m={a.m}, q={a.q}) vs (m={b.m}, q={b.q})")


def poly_add(a: Poly, b: Poly) -> Poly:
    _check(a, b)
    return Poly(a.coeffs + b.coeffs, a.q)


def poly_sub(a: Poly, b: Poly) -> Poly:
    _check(a, b)
    return Poly(a.coeffs - b.coeffs, a.q)


def poly_neg(a: Poly) -> Poly:
    return Poly(-a.coeffs, a.q)


def ntt_forward(a: Poly) -> np.ndarray:
    """Evaluations at the odd powers of the table root, in bit-reversed order."""
    t = ntt_tables(a.m, a.q)
    return _kernels.ntt_forward(a.coeffs, t.zetas, t.zetas_shoup, a.q)


def ntt_inverse(v: np.ndarray, q: int) -> Poly:
    v = np.asarray(v, dtype=np.int64) % q
    t = ntt_tables(v.shape[0], q)
    return Poly(_kernels.ntt_inverse(v, t.izetas, t.izetas_shoup, t.m_inv, t.m_inv_shoup, q), q)


def poly_mul(a: Poly, b: Poly, mode: str = "auto") -> Poly:
    """Product in S_q.  ``auto`` takes the NTT route whenever q allows it."""
    _check(a, b)
    if mode == "auto":
        mode = "ntt" if ntt_available(a.m, a.q) else "schoolbook"
    if mode == "schoolbook":
        return Poly(_kernels.schoolbook(a.coeffs, b.coeffs, a.q), a.q)
    if mode != "ntt":
        raise ValueError(f"unknown mode {mode!r}")
    fa, fb = ntt_forward(a), ntt_forward(b)
    return ntt_inverse(_kernels.pointwise(fa, fb, a.q), a.q)


def poly_involution(a: Poly) -> Poly:
    """f(x) -> f(x^{-1}); x^{-i} = -x^{m-i} because x^m = -1."""
    c = a.coeffs
    out = np.empty_like(c)
    out[0] = c[0]
    out[1:] = -c[:0:-1]
    return Poly(out, a.q)


def _inverse_euclid(a: Poly) -> Poly:
    # Extended Euclid over F_q[x] against x^m + 1; coefficient lists are low-degree first.
    q, m = a.q, a.m

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(u, v):
        u = u[:]
        inv_lead = pow(v[-1], -1, q)
        quo = [0] * max(len(u) - len(v) + 1, 1)
        while len(u) >= len(v) and u:
            c = u[-1] * inv_lead % q
            shift = len(u) - len(v)
            quo[shift] = c
            for i, vi in enumerate(v):
                u[shift + i] = (u[shift + i] - c * vi) % q
            trim(u)
        return trim(quo), u

    def sub_mul(x, c, y):
        out = x + [0] * max(0, len(c) + len(y) - 1 - len(x))
        for i, ci in enumerate(c):
            for j, yj in enumerate(y):
                out[i + j] = (out[i + j] - ci * yj) % q
        return trim(out)

    r0, r1 = trim([1] + [0] * (m - 1) + [1]), trim([int(v) for v in a.coeffs])
    s0, s1 = [], [1]
    if not r1:
        raise NotInvertible("zero polynomial")
    while r1:
        quo, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub_mul(s0, quo, s1)
    if len(r0) != 1:
        raise NotInvertible("shares a factor with x^m + 1")
    scale = pow(r0[0], -1, q)
    out = np.zeros(m, dtype=np.int64)
    for i, c in enumerate(s0):
        out[i] = c * scale % q
    return Poly(out, q)


def poly_inverse(a: Poly) -> Poly:
    if a.is_zero():
        raise NotInvertible("zero polynomial")
    if not ntt_available(a.m, a.q):
        return _inverse_euclid(a)
    ev = ntt_forward(a)
    if not ev.all():
        raise NotInvertible("vanishes at a root of x^m + 1")
    inv = np.array([pow(int(v), -1, a.q) for v in ev], dtype=np.int64)
    return ntt_inverse(inv, a.q)
