import hashlib
import random

import pytest

from keysweep import ec
from keysweep.nonces import kproto_k, KPROTO_LABELS, zbit_test, rayleigh_test, NonceSampleSet
from keysweep.nonces.rfc6979 import InvalidPrivateKeyError

LABEL = KPROTO_LABELS["ecdsa"]


def test_deterministic():
    digest = hashlib.sha512(b"payload").digest()
    a = kproto_k(LABEL, 777, digest, ec.P256.n)
    b = kproto_k(LABEL, 777, digest, ec.P256.n)
    assert a == b
    assert 2 <= a < ec.P256.n


def test_label_and_key_change_nonce():
    digest = hashlib.sha512(b"payload").digest()
    a = kproto_k(KPROTO_LABELS["ecdsa"], 777, digest, ec.P521.n)
    b = kproto_k(KPROTO_LABELS["dsa"], 777, digest, ec.P521.n)
    c = kproto_k(KPROTO_LABELS["ecdsa"], 778, digest, ec.P521.n)
    assert len({a, b, c}) == 3


def test_p521_nonces_stay_below_2_512():
    # The group order exceeds 2^512, so the reduction never fires and the
    # nine top bits stay clear (up to the +2 offset).
    rng = random.Random(1)
    q = ec.P521.n
    for _ in range(200):
        digest = rng.randbytes(64)
        k = kproto_k(LABEL, rng.randrange(1, q), digest, q)
        assert k < 2**512 + 2
        assert k >> 512 == 0 or k - 2 >= 2**512 - 2  # top bits clear in practice


def test_p256_distribution_is_unbiased():
    rng = random.Random(2)
    q = ec.P256.n
    x = rng.randrange(1, q)
    nonces = [kproto_k(LABEL, x, rng.randbytes(32), q) for _ in range(10_000)]
    sample = NonceSampleSet(q=q, nonces=nonces)
    assert not zbit_test(sample).biased
    assert not rayleigh_test(sample).biased


def test_p521_distribution_is_biased():
    rng = random.Random(3)
    q = ec.P521.n
    x = rng.randrange(1, q)
    nonces = [kproto_k(LABEL, x, rng.randbytes(64), q) for _ in range(10_000)]
    sample = NonceSampleSet(q=q, nonces=nonces)
    z = zbit_test(sample)
    assert z.flagged_bits == list(range(512, 521))
    assert rayleigh_test(sample).biased


def test_rejects_bad_private_key():
    with pytest.raises(InvalidPrivateKeyError):
        kproto_k(LABEL, 0, b"\x00" * 64, ec.P256.n)
