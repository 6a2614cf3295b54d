"""Shared oracles and strategies.

The oracles here are written from the group presentation alone, with plain
Python integers, so they share no code with the library.
"""

from __future__ import annotations

import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from dihedral_lwe.group_ring import RingElement
from dihedral_lwe.sampler import make_rng

NTT_PRESETS = {4: 17, 8: 73, 16: 257, 32: 1153, 64: 4289}


def negacyclic_oracle(a, b, q):
    """Schoolbook product in Z_q[x]/(x^m + 1) on Python ints."""
    m = len(a)
    out = [0] * m
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            k = i + j
            if k < m:
                out[k] += int(ai) * int(bj)
            else:
                out[k - m] -= int(ai) * int(bj)
    return [c % q for c in out]


def _group_mul(g1, g2, n):
    """(s^j1 r^k1)(s^j2 r^k2) = s^(j1+j2) r^(k2 + (-1)^j2 k1), using r s = s r^-1."""
    (j1, k1), (j2, k2) = g1, g2
    k = k2 + (k1 if j2 == 0 else -k1)
    return ((j1 + j2) % 2, k % n)


def dihedral_oracle(x, y, n, q=None):
    """Multiply two embeddings in Z[D_2n]/(r^{n/2} + 1) term by term.

    Each basis product is formed in the full dihedral group and then folded
    with r^{m + i} = -r^i.
    """
    m = n // 2
    out = [0] * n

    def terms(v):
        for idx, c in enumerate(v):
            if c:
                yield (idx // m, idx % m), int(c)

    for g1, c1 in terms(x):
        for g2, c2 in terms(y):
            j, k = _group_mul(g1, g2, n)
            sign = 1
            if k >= m:
                k -= m
                sign = -1
            out[j * m + k] += sign * c1 * c2
    if q is not None:
        out = [c % q for c in out]
    return out


def involution_oracle(a, q):
    """f(x) -> f(x^{-1}) with x^{-i} = -x^{m-i}."""
    m = len(a)
    out = [0] * m
    out[0] = int(a[0])
    for i in range(1, m):
        out[m - i] = -int(a[i])
    return [c % q for c in out]


@pytest.fixture
def rng():
    return make_rng(12345)


def ring_elements(n, q, lo=None, hi=None):
    lo = 0 if lo is None else lo
    hi = q - 1 if hi is None else hi
    return st.lists(st.integers(lo, hi), min_size=n, max_size=n).map(
        lambda v: RingElement.from_embedding(np.array(v, dtype=np.int64), q)
    )


@st.composite
def ring_pairs(draw, sizes=(4, 8, 16), moduli=(17, 97)):
    n = draw(st.sampled_from(sizes))
    q = draw(st.sampled_from(moduli))
    x = draw(ring_elements(n, q))
    y = draw(ring_elements(n, q))
    return x, y


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
