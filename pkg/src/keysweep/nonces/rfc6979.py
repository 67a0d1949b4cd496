"""Deterministic (EC)DSA nonces per RFC 6979 section 3.2."""

from __future__ import annotations

import hashlib
import hmac


class InvalidPrivateKeyError(ValueError):
    pass


def _bits2int(data: bytes, qlen: int) -> int:
    x = int.from_bytes(data, "big")
    blen = 8 * len(data)
    if blen > qlen:
        x >>= blen - qlen
    return x


def _int2octets(x: int, rolen: int) -> bytes:
    return x.to_bytes(rolen, "big")


def _bits2octets(data: bytes, q: int, qlen: int, rolen: int) -> bytes:
    z1 = _bits2int(data, qlen)
    z2 = z1 - q
    if z2 < 0:
        z2 = z1
    return _int2octets(z2, rolen)


def rfc6979_k(x: int, digest: bytes, q: int, hash_name: str = "sha256") -> int:
    """Derive the nonce for private key x and message digest `digest`.

    `digest` is H(m) for the same hash H named by `hash_name`, which also
    drives the HMAC-DRBG. The result is uniform over [1, q-1] and matches
    the RFC's published test vectors bit for bit.
    """
    if not 1 <= x < q:
        raise InvalidPrivateKeyError("private key out of range")
    qlen = q.bit_length()
    rolen = (qlen + 7) // 8
    hfun = getattr(hashlib, hash_name)
    hlen = hfun().digest_size

    V = b"\x01" * hlen
    K = b"\x00" * hlen
    seed = _int2octets(x, rolen) + _bits2octets(digest, q, qlen, rolen)
    K = hmac.new(K, V + b"\x00" + seed, hfun).digest()
    V = hmac.new(K, V, hfun).digest()
    K = hmac.new(K, V + b"\x01" + seed, hfun).digest()
    V = hmac.new(K, V, hfun).digest()

    while True:
        T = b""
        while len(T) < rolen:
            V = hmac.new(K, V, hfun).digest()
            T += V
        k = _bits2int(T, qlen)
        if 1 <= k <= q - 1:
            return k
        K = hmac.new(K, V + b"\x00", hfun).digest()
        V = hmac.new(K, V, hfun).digest()
