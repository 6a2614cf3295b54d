from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dihedral_lwe.group_ring import RingElement
from dihedral_lwe.params import build_params
from dihedral_lwe.pke import (
    EncryptionRandomness,
    Plaintext,
    PublicKey,
    decode,
    decrypt,
    encode,
    encrypt,
    encrypt_with,
    estimate_failure_rate,
    keygen,
    noise_term,
    predicted_noise_std,
    wilson_interval,
)
from dihedral_lwe.sampler import ErrorDist, make_rng


def zeros(n, q):
    return RingElement.zero(n, q)


def test_noiseless_exhaustive_n4():
    p = build_params(4, "toy")
    pk, sk = keygen(p, make_rng(0), ErrorDist(0.0, p.q, p.m))
    z0 = zeros(4, p.q)
    for bits in product([0, 1], repeat=4):
        z = Plaintext(np.array(bits, dtype=np.uint8))
        r = RingElement.from_embedding(make_rng(sum(bits)).integers(-1, 2, 4), p.q)
        ct = encrypt_with(pk, z, EncryptionRandomness(r, z0, z0))
        assert decrypt(sk, ct) == z


def test_zero_errors_zero_message():
    p = build_params(8)
    rng = make_rng(1)
    pk, sk = keygen(p, rng)
    r = RingElement.from_embedding(rng.integers(-2, 3, 8), p.q)
    z = Plaintext(np.zeros(8, dtype=np.uint8))
    ct = encrypt_with(pk, z, EncryptionRandomness(r, zeros(8, p.q), zeros(8, p.q)))
    assert ct.u == pk.a * r
    assert ct.v == pk.b * r


def test_all_randomness_zero_reads_message():
    p = build_params(8)
    pk, sk = keygen(p, make_rng(2))
    z = Plaintext(np.array([1, 0, 1, 1, 0, 0, 1, 0], dtype=np.uint8))
    zr = zeros(8, p.q)
    ct = encrypt_with(pk, z, EncryptionRandomness(zr, zr, zr))
    assert ct.u.is_zero()
    assert ct.v == p.half_q * encode(z, p.q)
    assert decode(ct.v) == z


def test_degenerate_keygen():
    p = build_params(8)
    pk, sk = keygen(p, make_rng(3), ErrorDist(0.0, p.q, p.m))
    assert sk.s.is_zero() and sk.e.is_zero() and pk.b.is_zero()


def test_decode_threshold():
    q = 17
    # 4 sits at distance 4 from 0 and 4 from 8: a tie, which decodes to 1
    d = RingElement.from_embedding([0, 3, 4, 8, 13, 12, 9, 16], q)
    assert decode(d).bits.tolist() == [0, 0, 1, 1, 0, 1, 1, 0]


def test_message_length_checked():
    p = build_params(8)
    pk, _ = keygen(p, make_rng(4))
    with pytest.raises(ValueError):
        encrypt(pk, Plaintext(np.zeros(4, dtype=np.uint8)), make_rng(5))
    with pytest.raises(ValueError):
        Plaintext(np.array([0, 2]))


@given(st.integers(0, 2**63), st.sampled_from([16, 64, 256]))
@settings(max_examples=25, deadline=None)
def test_decryption_identity_and_roundtrip(seed, n):
    p = build_params(n)
    rng = make_rng(seed)
    pk, sk = keygen(p, rng)
    z = Plaintext(rng.integers(0, 2, n, dtype=np.uint8))
    ct, rand = encrypt(pk, z, rng, return_randomness=True)
    residue = ct.v - sk.s * ct.u
    assert residue == noise_term(sk, rand) + p.half_q * encode(z, p.q)
    assert decrypt(sk, ct) == z


def test_swapped_key_order_breaks_decryption():
    # b = a s + e with v - s u no longer cancels a r s terms
    p = build_params(64)
    rng = make_rng(6)
    pk, sk = keygen(p, rng)
    bad = PublicKey(pk.a, pk.a * sk.s + sk.e, p)
    fails = 0
    for _ in range(5):
        z = Plaintext(rng.integers(0, 2, 64, dtype=np.uint8))
        fails += decrypt(sk, encrypt(bad, z, rng)) != z
    assert fails == 5


def test_failure_estimate_small():
    p = build_params(64)
    rep = estimate_failure_rate(p, 200, make_rng(7))
    assert rep.message_failures == 0
    assert rep.message_ci[1] < 0.02
    assert rep.max_noise_linf < p.q / 4
    assert "trials=200" in rep.summary()


def test_failure_estimate_zero_width():
    p = build_params(16)
    rep = estimate_failure_rate(p, 100, make_rng(8), ErrorDist(0.0, p.q, p.m))
    assert rep.message_failures == 0 and rep.bit_failures == 0 and rep.max_noise_linf == 0


def test_failure_estimate_needs_trials():
    with pytest.raises(ValueError):
        estimate_failure_rate(build_params(16), 10, make_rng(0))


def test_wilson_interval_known_value():
    lo, hi = wilson_interval(0, 10_000)
    assert lo == 0.0
    assert hi == pytest.approx(3.84 / (10_000 + 3.84), rel=1e-2)


def test_predicted_noise_matches_empirical():
    p = build_params(256)
    rng = make_rng(9)
    vals = []
    for _ in range(40):
        pk, sk = keygen(p, rng)
        z = Plaintext(np.zeros(256, dtype=np.uint8))
        _, rand = encrypt(pk, z, rng, return_randomness=True)
        vals.append(noise_term(sk, rand).centered())
    assert np.std(np.concatenate(vals)) == pytest.approx(predicted_noise_std(p), rel=0.1)
