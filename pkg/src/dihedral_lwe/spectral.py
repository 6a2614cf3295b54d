"""Spectral view of ring elements: evaluations at odd roots of unity.

Over the reals, R splits into 2x2 matrix blocks indexed by the odd powers
zeta^k of zeta = exp(2 pi i / n).  For h = f(r) + s g(r) the block of h has
singular values |f(zeta^k)| + |g(zeta^k)| and ||f(zeta^k)| - |g(zeta^k)||,
which gives both the matrix norm and the invertibility test without forming
the n x n regular representation.

The regular representation itself is kept as a dense oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OracleSizeExceeded
from .group_ring import ORACLE_MAX_N, RingElement

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SpectralProfile:
    ks: np.ndarray  # odd k with 1 <= k < n/2
    abs_f: np.ndarray
    abs_g: np.ndarray
    n: int
    q: int | None = None

    @property
    def matrix_norm(self) -> float:
        return float((self.abs_f + self.abs_g).max())

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of A A^T, each block value repeated for its conjugate pair."""
        plus = (self.abs_f + self.abs_g) ** 2
        minus = (self.abs_f - self.abs_g) ** 2
        return np.sort(np.concatenate([plus, plus, minus, minus]))

    def rows(self):
        return zip(self.ks.tolist(), self.abs_f.tolist(), self.abs_g.tolist())


def _as_real_halves(x) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(x, RingElement):
        v = x.centered().astype(float)
    else:
        v = np.asarray(x, dtype=float)
    m = v.shape[-1] // 2
    return v[..., :m], v[..., m:]


def odd_evaluations(coeffs: np.ndarray, n: int) -> np.ndarray:
    """sum_i c_i zeta^{k i} for odd k < n/2; works on stacked rows."""
    spectrum = np.fft.ifft(coeffs, n=n, axis=-1) * n
    return spectrum[..., 1: n // 2: 2]


def spectral_profile(x) -> SpectralProfile:
    """Profile of a RingElement (centered lift) or a real coefficient embedding."""
    f, g = _as_real_halves(x)
    n = 2 * f.shape[-1]
    q = x.q if isinstance(x, RingElement) else None
    return SpectralProfile(
        ks=np.arange(1, n // 2, 2),
        abs_f=np.abs(odd_evaluations(f, n)),
        abs_g=np.abs(odd_evaluations(g, n)),
        n=n,
        q=q,
    )


def matrix_norm(x) -> float:
    return spectral_profile(x).matrix_norm


def is_invertible_real(x, tol: float = DEFAULT_TOL) -> bool:
    """Invertibility in R (x) Q: |f(zeta^k)| != |g(zeta^k)| for every odd k."""
    p = spectral_profile(x)
    gap = np.abs(p.abs_f - p.abs_g).min()
    return bool(gap > tol * (1.0 + p.matrix_norm))


# dense oracle ---------------------------------------------------------------


def negacyclic_matrix(c: np.ndarray) -> np.ndarray:
    """Column j holds the coefficients of c(x) * x^j mod x^m + 1."""
    m = c.shape[0]
    out = np.zeros((m, m), dtype=c.dtype)
    col = c.copy()
    for j in range(m):
        out[:, j] = col
        col = np.concatenate([-col[-1:], col[:-1]])
    return out


def _involution(c: np.ndarray) -> np.ndarray:
    out = np.empty_like(c)
    out[0] = c[0]
    out[1:] = -c[:0:-1]
    return out


def reg_rep_matrix(x, field: str = "integers") -> np.ndarray:
    """Left-multiplication matrix A(x) on the basis 1, .., r^{m-1}, s, .., s r^{m-1}.

    x r^j = f r^j + s g r^j and x s r^j = s f~ r^j + g~ r^j, so

        A(x) = [[C(f), C(g~)],
                [C(g), C(f~)]]

    with C the negacyclic circulant and ~ the involution.  ``integers`` uses
    the centered lift of a RingElement (or an integer embedding as given);
    ``mod_q`` reduces the entries to [0, q).
    """
    if isinstance(x, RingElement):
        v = x.centered()
        q = x.q
    else:
        v = np.asarray(x)
        q = None
    n = v.shape[0]
    if n > ORACLE_MAX_N:
        raise OracleSizeExceeded(f"dense representation limited to n <= {ORACLE_MAX_N}")
    m = n // 2
    f, g = v[:m], v[m:]
    a = np.block([
        [negacyclic_matrix(f), negacyclic_matrix(_involution(g))],
        [negacyclic_matrix(g), negacyclic_matrix(_involution(f))],
    ])
    if field == "mod_q":
        if q is None:
            raise ValueError("mod_q needs a RingElement")
        return a % q
    if field != "integers":
        raise ValueError(f"unknown field {field!r}")
    return a


def dense_matrix_norm(x) -> float:
    a = reg_rep_matrix(x).astype(float)
    return float(np.sqrt(np.linalg.eigvalsh(a @ a.T).max()))


# Gaussian concentration -----------------------------------------------------


def gaussian_matrix_norms(sigma: float, n: int, trials: int, rng: np.random.Generator,
                          batch: int = 2000) -> np.ndarray:
    """Matrix norms of ``trials`` elements with i.i.d. N(0, sigma^2) coefficients."""
    out = np.empty(trials)
    m = n // 2
    done = 0
    while done < trials:
        k = min(batch, trials - done)
        v = rng.normal(0.0, sigma, size=(k, n)) if sigma > 0 else np.zeros((k, n))
        ef = np.abs(odd_evaluations(v[:, :m], n))
        eg = np.abs(odd_evaluations(v[:, m:], n))
        out[done:done + k] = (ef + eg).max(axis=1)
        done += k
    return out


def gauss_norm_tail(sigma: float, n: int, trials: int, threshold_mult: float,
                    rng: np.random.Generator) -> float:
    """Fraction of Gaussian elements whose matrix norm exceeds threshold_mult * sigma * sqrt(n)."""
    if trials < 1000:
        raise ValueError("need at least 1000 trials")
    norms = gaussian_matrix_norms(sigma, n, trials, rng)
    return float(np.mean(norms > threshold_mult * sigma * np.sqrt(n)))

