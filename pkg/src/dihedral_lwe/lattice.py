"""Exact checks on principal ideal lattices of R = Z[D_2n]/(r^{n/2} + 1).

Everything here runs on Python integers and ``fractions.Fraction``; it is a
verification harness for small n (at most 16), not a production path.

Row convention: a lattice is the integer row span of its basis ``B``; the dual
basis is ``(B^{-1})^T`` so that ``B D^T = I``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotInLattice, NotInvertible, OracleSizeExceeded, SingularBasis
from .group_ring import RingElement, _fold_quotient, _lift_to_group, group_ring_convolve

MAX_N = 16

Matrix = list  # list of rows of Fraction


# exact linear algebra --------------------------------------------------------


def bareiss_det(rows) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [[int(v) for v in row] for row in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _to_fractions(rows) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def inverse(rows) -> Matrix:
    """Gauss-Jordan inverse over Q."""
    a = _to_fractions(rows)
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularBasis("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def determinant(rows) -> Fraction:
    a = _to_fractions(rows)
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / a[col][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def matmul(a, b) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def is_integral(a) -> bool:
    return all(Fraction(v).denominator == 1 for row in a for v in row)


def contains(outer, inner) -> bool:
    """Row span of ``inner`` lies inside the lattice spanned by ``outer``."""
    return is_integral(matmul(_to_fractions(inner), inverse(outer)))


def same_lattice(b1, b2) -> bool:
    return contains(b1, b2) and contains(b2, b1)


# exact ring arithmetic -------------------------------------------------------


def _embedding(h) -> list:
    if isinstance(h, RingElement):
        return [int(v) for v in h.centered()]
    return [Fraction(v) if isinstance(v, Fraction) else int(v) for v in h]


def exact_mul(u, v) -> list:
    """Product over Q of two coefficient embeddings, via the group multiplication table."""
    u, v = _embedding(u), _embedding(v)
    n = len(u)
    if n > MAX_N:
        raise OracleSizeExceeded(f"exact arithmetic limited to n <= {MAX_N}")
    uu = _lift_to_group(np.array(u, dtype=object), n)
    vv = _lift_to_group(np.array(v, dtype=object), n)
    return list(_fold_quotient(group_ring_convolve(uu, vv, n), n))


def unit_vectors(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def left_mult_matrix(h) -> Matrix:
    """Column j is the embedding of h * (basis monomial j)."""
    v = _embedding(h)
    cols = [exact_mul(v, e) for e in unit_vectors(len(v))]
    return transpose(cols)


def exact_inverse(h) -> list:
    """h^{-1} in R (x) Q, from A(h) x = e_0."""
    a = left_mult_matrix(h)
    if determinant(a) == 0:
        raise NotInvertible("element is a zero divisor over Q")
    ainv = inverse(a)
    return [row[0] for row in ainv]


# lattices --------------------------------------------------------------------


@dataclass(frozen=True)
class IdealLattice:
    basis: tuple  # rows of Fraction
    side: str
    generator: tuple

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def det(self) -> Fraction:
        return determinant(self.basis)

    def rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    def __contains__(self, v) -> bool:
        return is_integral(matmul([_to_fractions([v])[0]], inverse(self.basis)))


@dataclass(frozen=True)
class DualLattice:
    basis: tuple

    def rows(self) -> Matrix:
        return [list(r) for r in self.basis]

    @property
    def det(self) -> Fraction:
        return determinant(self.basis)


def _freeze(rows) -> tuple:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def _check_size(n: int):
    if n > MAX_N:
        raise OracleSizeExceeded(f"lattice tools limited to n <= {MAX_N}")


def ideal_basis(h, side: str = "right_ideal") -> IdealLattice:
    """Basis of h R (rows h * g_j) or of R h (rows g_j * h)."""
    v = _embedding(h)
    _check_size(len(v))
    if side == "right_ideal":
        rows = [exact_mul(v, e) for e in unit_vectors(len(v))]
    elif side == "left_module":
        rows = [exact_mul(e, v) for e in unit_vectors(len(v))]
    else:
        raise ValueError(f"unknown side {side!r}")
    if determinant(rows) == 0:
        raise NotInvertible("generator is a zero divisor over Q")
    return IdealLattice(_freeze(rows), side, tuple(v))


def dual_basis(lat) -> DualLattice:
    rows = lat.rows() if hasattr(lat, "rows") else lat
    return DualLattice(_freeze(transpose(inverse(rows))))


def left_inverse_ideal(h) -> IdealLattice:
    """I^{-1} = R h^{-1} for the principal right ideal I = h R."""
    v = _embedding(h)
    _check_size(len(v))
    hinv = exact_inverse(v)
    rows = [exact_mul(e, hinv) for e in unit_vectors(len(v))]
    return IdealLattice(_freeze(rows), "left_module", tuple(v))


def adjoint_coordinates(vec, signed: bool = True) -> list:
    """Coefficients of x -> x* (g -> g^{-1}) on the rotation block; reflection block fixed.

    In the quotient r^{-i} = -r^{m-i}, so the rotation block maps
    (x_0, x_1, .., x_{m-1}) to (x_0, -x_{m-1}, .., -x_1).  ``signed=False``
    gives the bare coordinate reversal, which matches the full group ring
    but not the quotient.
    """
    m = len(vec) // 2
    x, y = list(vec[:m]), list(vec[m:])
    sign = -1 if signed else 1
    return [x[0]] + [sign * x[m - i] for i in range(1, m)] + y


def check_dual_permutation(h, signed: bool = True) -> bool:
    """Does the adjoint image of the left inverse ideal equal the dual of h R?"""
    inv_rows = left_inverse_ideal(h).rows()
    permuted = [adjoint_coordinates(row, signed) for row in inv_rows]
    return same_lattice(permuted, dual_basis(ideal_basis(h)).rows())


# reduction mod q -------------------------------------------------------------


def mod_q_projection(v, lat: IdealLattice, q: int) -> RingElement:
    """Inclusion I -> R followed by reduction mod qR."""
    vec = [Fraction(x) for x in v]
    if not all(x.denominator == 1 for x in vec) or list(vec) not in lat:
        raise NotInLattice("vector is not a point of the ideal lattice")
    return RingElement.from_embedding(np.array([int(x) % q for x in vec], dtype=np.int64), q)


def rank_mod_q(rows, q: int) -> int:
    a = [[int(v) % q for v in row] for row in rows]
    rank, ncols = 0, len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, q)
        a[rank] = [v * inv % q for v in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % q for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def projection_is_surjective(lat: IdealLattice, q: int) -> bool:
    if not is_integral(lat.basis):
        raise NotInLattice("projection needs an integral ideal")
    return rank_mod_q(lat.basis, q) == lat.n
