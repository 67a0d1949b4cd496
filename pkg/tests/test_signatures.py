import random

import pytest
from cryptography.hazmat.primitives import hashes as chashes
from cryptography.hazmat.primitives.asymmetric import ec as cec
from cryptography.hazmat.primitives.asymmetric.utils import (
    Prehashed, encode_dss_signature)

from keysweep import ec
from keysweep.nonces import (
    ecdsa_sign_with_k, ecdsa_verify, recover_k, dsa_sign_with_k, dsa_verify,
    NonInvertibleSError,
)


def test_recover_k_hand_arithmetic():
    # q=23, x=7, h=4, r=3, s=5: 5^-1 = 14, 14*(4 + 7*3) = 14*25 = 14*2 = 28 = 5 (mod 23)
    assert recover_k((3, 5), 4, 7, 23) == 5


def test_recover_k_zero_s():
    with pytest.raises(NonInvertibleSError):
        recover_k((3, 0), 4, 7, 23)


@pytest.mark.parametrize("curve", [ec.P256, ec.P384, ec.P521])
def test_sign_recover_inverse(curve):
    rng = random.Random(42)
    q = curve.n
    for _ in range(200):
        x = rng.randrange(1, q)
        h = rng.randrange(0, q)
        k = rng.randrange(1, q)
        r, s = ecdsa_sign_with_k(x, h, k, curve)
        assert recover_k((r, s), h, x, q) == k
        assert ecdsa_verify(ec.base_mul(curve, x), h, (r, s), curve)


def test_sign_verifies_under_independent_implementation():
    rng = random.Random(7)
    q = ec.P256.n
    x = rng.randrange(1, q)
    digest = rng.randbytes(32)
    h = ec.digest_bits_to_int(digest, q)
    r, s = ecdsa_sign_with_k(x, h, rng.randrange(1, q), ec.P256)
    pub = cec.derive_private_key(x, cec.SECP256R1()).public_key()
    pub.verify(encode_dss_signature(r, s), digest, cec.ECDSA(Prehashed(chashes.SHA256())))


def test_verify_rejects_wrong_key_and_tampered_hash():
    rng = random.Random(9)
    q = ec.P256.n
    x = rng.randrange(1, q)
    h = rng.randrange(0, q)
    sig = ecdsa_sign_with_k(x, h, rng.randrange(1, q), ec.P256)
    assert not ecdsa_verify(ec.base_mul(ec.P256, x + 1), h, sig, ec.P256)
    assert not ecdsa_verify(ec.base_mul(ec.P256, x), h + 1, sig, ec.P256)


def test_dsa_sign_verify_and_recover():
    # small but honest DSA group: q | p - 1, g of order q
    q = 998244353  # prime
    p, g = None, None
    m = 2
    while True:
        cand = q * m + 1
        from keysweep.primes import is_probable_prime
        if is_probable_prime(cand, 20):
            p = cand
            break
        m += 1
    h_gen = 2
    while True:
        g = pow(h_gen, (p - 1) // q, p)
        if g > 1:
            break
        h_gen += 1
    rng = random.Random(5)
    x = rng.randrange(1, q)
    y = pow(g, x, p)
    h = rng.randrange(0, q)
    k = rng.randrange(1, q)
    r, s = dsa_sign_with_k(x, h, k, p, q, g)
    assert dsa_verify(y, h, (r, s), p, q, g)
    assert recover_k((r, s), h, x, q) == k
    assert not dsa_verify(y, h + 1, (r, s), p, q, g)
