"""PuTTY-compatible deterministic nonce scheme (pre-0.81, CVE-2024-31497).

The scheme reduces a 512-bit SHA-512 output into [2, q-1]:

    digest  = SHA-512(label || mpint(x))
    k_proto = SHA-512(digest || H(m))
    k       = (k_proto mod (q - 2)) + 2

For group orders longer than 512 bits the reduction step is a no-op, so
every nonce is below 2^512 + 2 regardless of q. With NIST P-521 that pins
the nine most significant nonce bits to zero, which is what the lattice
attack in keysweep.hnp exploits.
"""

from __future__ import annotations

import hashlib

from ..wire import encode_mpint
from .rfc6979 import InvalidPrivateKeyError

# Label candidates as found in PuTTY's source; the label is hashed including
# its terminating NUL, and the private key as a length-prefixed mpint.
# Configurable because other deterministic-nonce forks may vary the string.
KPROTO_LABELS: dict[str, bytes] = {
    "dsa": b"DSA deterministic k generator\x00",
    "ecdsa": b"ECDSA deterministic k generator\x00",
}


def kproto_k(label: bytes, x: int, digest: bytes, q: int) -> int:
    """Nonce in [2, q-1] for the given label, private key and message digest."""
    if not 1 <= x < q:
        raise InvalidPrivateKeyError("private key out of range")
    seed = hashlib.sha512(label + encode_mpint(x)).digest()
    proto = int.from_bytes(hashlib.sha512(seed + digest).digest(), "big")
    return proto % (q - 2) + 2
