"""Compiled inner loops for S_q = F_q[x]/(x^m + 1).

All inputs are int64 arrays of canonical residues in [0, q) with q < 2^31, so a
single product fits in int64 and m such products can be summed without
overflow for every m used here.
"""

import numba
import numpy as np


@numba.njit(cache=True, inline="always")
def mulmod(a, b, q, qinv):
    # Quotient estimate in double precision is off by at most one for q < 2^31.
    p = a * b
    r = p - np.int64(float(a) * float(b) * qinv) * q
    if r < 0:
        r += q
    elif r >= q:
        r -= q
    return r


@numba.njit(cache=True)
def schoolbook(a, b, q):
    m = a.shape[0]
    qinv = 1.0 / q
    acc = np.zeros(m, dtype=np.int64)
    for i in range(m):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(m):
            prod = mulmod(ai, b[j], q, qinv)
            k = i + j
            if k < m:
                acc[k] += prod
            else:
                acc[k - m] -= prod
    for k in range(m):
        acc[k] %= q
    return acc


@numba.njit(cache=True, inline="always")
def mulmod_shoup(b, z, zs, q):
    # zs = floor(z * 2^32 / q) is precomputed; the quotient estimate is low by at most one.
    r = z * b - ((zs * b) >> 32) * q
    return r - q if r >= q else r


@numba.njit(cache=True)
def ntt_forward(a, zetas, zetas_shoup, q):
    # Cooley-Tukey, natural order in, bit-reversed order out.
    m = a.shape[0]
    out = a.copy()
    k = 0
    length = m // 2
    while length >= 1:
        start = 0
        while start < m:
            k += 1
            z = zetas[k]
            zs = zetas_shoup[k]
            for j in range(start, start + length):
                t = mulmod_shoup(out[j + length], z, zs, q)
                u = out[j]
                d = u - t
                out[j + length] = d + q if d < 0 else d
                s = u + t
                out[j] = s - q if s >= q else s
            start += 2 * length
        length //= 2
    return out


@numba.njit(cache=True)
def ntt_inverse(a, izetas, izetas_shoup, m_inv, m_inv_shoup, q):
    # Gentleman-Sande, bit-reversed order in, natural order out.
    m = a.shape[0]
    out = a.copy()
    length = 1
    while length < m:
        # undo the forward layer of the same length, block by block
        k = m // (2 * length)
        start = 0
        while start < m:
            z = izetas[k]
            zs = izetas_shoup[k]
            k += 1
            for j in range(start, start + length):
                u = out[j]
                v = out[j + length]
                s = u + v
                out[j] = s - q if s >= q else s
                d = u - v
                out[j + length] = mulmod_shoup(d + q if d < 0 else d, z, zs, q)
            start += 2 * length
        length *= 2
    for j in range(m):
        out[j] = mulmod_shoup(out[j], m_inv, m_inv_shoup, q)
    return out


@numba.njit(cache=True)
def pointwise(a, b, q):
    qinv = 1.0 / q
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = mulmod(a[i], b[i], q, qinv)
    return out


@numba.njit(cache=True)
def pointwise_mac(a, b, c, d, q):
    """a*b + c*d, elementwise mod q."""
    qinv = 1.0 / q
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        s = mulmod(a[i], b[i], q, qinv) + mulmod(c[i], d[i], q, qinv)
        out[i] = s - q if s >= q else s
    return out


@numba.njit(cache=True)
def dihedral_mul_ntt(f1, f2, f3, f4, zetas, zetas_shoup, izetas, izetas_shoup, m_inv, m_inv_shoup, conj, q):
    """(f1 + s f2)(f3 + s f4) = (f1 f3 + f2~ f4) + s (f2 f3 + f1~ f4), ~ = involution.

    In the evaluation domain the involution is the index permutation ``conj``
    (the root at each slot swapped for its inverse), so only four forward
    transforms are needed.
    """
    a1 = ntt_forward(f1, zetas, zetas_shoup, q)
    a2 = ntt_forward(f2, zetas, zetas_shoup, q)
    b3 = ntt_forward(f3, zetas, zetas_shoup, q)
    b4 = ntt_forward(f4, zetas, zetas_shoup, q)
    c1 = a1[conj]
    c2 = a2[conj]
    rf = ntt_inverse(pointwise_mac(a1, b3, c2, b4, q), izetas, izetas_shoup, m_inv, m_inv_shoup, q)
    rg = ntt_inverse(pointwise_mac(a2, b3, c1, b4, q), izetas, izetas_shoup, m_inv, m_inv_shoup, q)
    return rf, rg
