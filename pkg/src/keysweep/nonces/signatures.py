"""(EC)DSA signing with caller-supplied nonces, and nonce recovery.

Regular crypto libraries rightly refuse to sign with a chosen k; the lab
needs exactly that to reproduce client behaviour, so the schoolbook
algorithms live here. Verification of ECDSA signatures is additionally
cross-checked against the `cryptography` package in the test suite.
"""

from __future__ import annotations

from .. import ec


class ZeroRorSError(ValueError):
    """r or s came out zero; the caller must resample the nonce."""


class NonInvertibleSError(ValueError):
    pass


def ecdsa_sign_with_k(x: int, h: int, k: int, curve: ec.Curve) -> tuple[int, int]:
    """Sign digest value h with private key x and nonce k; returns (r, s)."""
    q = curve.n
    if not 1 <= x < q or not 1 <= k < q:
        raise ValueError("x and k must be in [1, q)")
    R = ec.base_mul(curve, k)
    assert R is not None
    r = R[0] % q
    if r == 0:
        raise ZeroRorSError("r = 0")
    s = pow(k, -1, q) * (h + x * r) % q
    if s == 0:
        raise ZeroRorSError("s = 0")
    return r, s


def ecdsa_verify(Q: ec.Point, h: int, sig: tuple[int, int], curve: ec.Curve) -> bool:
    q = curve.n
    r, s = sig
    if not (1 <= r < q and 1 <= s < q) or Q is None:
        return False
    w = pow(s, -1, q)
    u1 = h * w % q
    u2 = r * w % q
    R = ec.add(curve, ec.base_mul(curve, u1), ec.mul(curve, u2, Q))
    return R is not None and R[0] % q == r


def recover_k(sig: tuple[int, int], h: int, x: int, q: int) -> int:
    """Invert the signing equation: k = s^-1 * (h + x*r) mod q."""
    r, s = sig
    if s % q == 0:
        raise NonInvertibleSError("s is not invertible modulo q")
    return pow(s, -1, q) * (h + x * r) % q


# DSA over GF(p) subgroups -- the signing equation is the same modulo q, so
# recover_k above applies unchanged.

def dsa_sign_with_k(x: int, h: int, k: int, p: int, q: int, g: int) -> tuple[int, int]:
    if not 1 <= x < q or not 1 <= k < q:
        raise ValueError("x and k must be in [1, q)")
    r = pow(g, k, p) % q
    if r == 0:
        raise ZeroRorSError("r = 0")
    s = pow(k, -1, q) * (h + x * r) % q
    if s == 0:
        raise ZeroRorSError("s = 0")
    return r, s


def dsa_verify(y: int, h: int, sig: tuple[int, int], p: int, q: int, g: int) -> bool:
    r, s = sig
    if not (1 <= r < q and 1 <= s < q):
        return False
    w = pow(s, -1, q)
    u1 = h * w % q
    u2 = r * w % q
    v = pow(g, u1, p) * pow(y, u2, p) % p % q
    return v == r
