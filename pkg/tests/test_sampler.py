import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from dihedral_lwe.errors import NotInvertible
from dihedral_lwe.group_ring import RingElement, gr_inverse
from dihedral_lwe.params import build_params
from dihedral_lwe.sampler import (
    ErrorDist,
    alpha_to_sigma,
    make_rng,
    sample_error,
    sample_lwe,
    sample_uniform,
    sigma_to_alpha,
    to_normal_form,
)

# sample_uniform(8, 73) under seed 42, recorded from the first run
GOLDEN_UNIFORM = [67, 6, 10, 10, 29, 19, 17, 63]


def rounded_residue_oracle(sigma, q, reach=20):
    """P(round(N(0, sigma^2)) = k mod q) from math.erf, summing every integer in the class."""
    def cdf(t):
        return 0.5 * (1 + math.erf(t / (sigma * math.sqrt(2))))

    out = [0.0] * q
    width = int(reach * sigma) + q
    for k in range(-width, width + 1):
        out[k % q] += cdf(k + 0.5) - cdf(k - 0.5)
    return np.array(out)


def test_uniform_golden():
    assert sample_uniform(8, 73, make_rng(42)).embed().tolist() == GOLDEN_UNIFORM


def test_distinct_seeds_differ():
    assert sample_uniform(64, 4289, make_rng(1)) != sample_uniform(64, 4289, make_rng(2))


def test_seed_range():
    make_rng(2**64 - 1)
    with pytest.raises(ValueError):
        make_rng(-1)


def test_alpha_sigma_inverse():
    assert sigma_to_alpha(alpha_to_sigma(0.01, 257), 257) == pytest.approx(0.01)


def test_zero_width_is_all_zero(rng):
    d = ErrorDist(0.0, 73, 4)
    assert sample_error(d, rng).is_zero()
    s = RingElement.zero(8, 73)
    smp = sample_lwe(s, d, rng)
    assert smp.b.is_zero()


def test_noiseless_sample_recovers_secret(rng):
    d = ErrorDist(0.0, 73, 4)
    s = sample_uniform(8, 73, rng)
    smp = sample_lwe(s, d, rng)
    assert smp.b == s * smp.a
    try:
        assert smp.b * gr_inverse(smp.a) == s
    except NotInvertible:
        pass


@pytest.mark.parametrize("sigma,q", [(0.7, 17), (2.5, 73), (16.0, 257), (3.0, 11)])
def test_table_matches_erf_oracle(sigma, q):
    for mode in ("integrated", "rounded"):
        table = ErrorDist(sigma, q, 2, mode).residue_pmf()
        tv = 0.5 * np.abs(table - rounded_residue_oracle(sigma, q)).sum()
        assert tv < 1e-12


def test_pmf_symmetric_and_normalized():
    d = ErrorDist(4.2, 257, 8)
    assert d.pmf.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(d.pmf, d.pmf[::-1])


@pytest.mark.parametrize("mode", ["integrated", "rounded"])
def test_samples_fit_the_table(mode):
    sigma, q = 2.0, 73
    d = ErrorDist(sigma, q, 4, mode)
    draws = d.sample(make_rng(77), 200_000)
    counts = np.bincount(draws, minlength=q)
    expect = rounded_residue_oracle(sigma, q)
    keep = expect * draws.size >= 5
    obs = np.append(counts[keep], counts[~keep].sum())
    exp = np.append(expect[keep], expect[~keep].sum()) * draws.size
    assert chisquare(obs, exp).pvalue > 1e-4


def test_modes_have_same_moments():
    d1 = ErrorDist(5.0, 257, 8, "integrated").sample_centered(make_rng(1), 400_000)
    d2 = ErrorDist(5.0, 257, 8, "rounded").sample_centered(make_rng(2), 400_000)
    assert abs(d1.mean()) < 0.05 and abs(d2.mean()) < 0.05
    assert d1.var() == pytest.approx(25 + 1 / 12, rel=0.02)
    assert d2.var() == pytest.approx(25 + 1 / 12, rel=0.02)


def test_bad_inputs():
    with pytest.raises(ValueError):
        ErrorDist(-1.0, 17, 2)
    with pytest.raises(ValueError):
        ErrorDist(1.0, 17, 2, "box")


@given(st.integers(0, 2**64 - 1))
@settings(max_examples=25)
def test_reproducible(seed):
    d = ErrorDist.from_params(build_params(16))
    a = sample_error(d, make_rng(seed))
    b = sample_error(d, make_rng(seed))
    assert a == b


@given(st.integers(0, 2**32))
@settings(max_examples=30)
def test_normal_form_reduction(seed):
    rng = make_rng(seed)
    p = build_params(8)
    d = ErrorDist.from_params(p)
    s = sample_uniform(8, p.q, rng)
    for side in ("left", "right"):
        (x1, e1), (x2, e2) = (sample_lwe(s, d, rng, side, return_error=True) for _ in range(2))
        try:
            out = to_normal_form((x1, x2))
        except NotInvertible:
            continue
        expect = out.a * e1 - e2 if side == "right" else e1 * out.a - e2
        assert out.b == expect


def test_normal_form_side_mismatch(rng):
    s = RingElement.one(8, 73)
    d = ErrorDist(1.0, 73, 4)
    with pytest.raises(ValueError):
        to_normal_form((sample_lwe(s, d, rng, "left"), sample_lwe(s, d, rng, "right")))
