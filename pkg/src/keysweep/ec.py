"""Short-Weierstrass and edwards25519 group arithmetic.

Pure-integer implementations used wherever signatures must be created with
caller-chosen nonces or verified against raw (possibly invalid) points,
which off-the-shelf crypto libraries refuse to do. Not constant-time; this
code handles lab keys only.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .wire import EcCurveId


class NotOnCurveError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    """y^2 = x^3 + a*x + b over GF(p), base point G of prime order n."""

    name: str
    p: int
    a: int
    b: int
    gx: int
    gy: int
    n: int

    @property
    def coord_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    def contains(self, x: int, y: int) -> bool:
        return (y * y - (x * x * x + self.a * x + self.b)) % self.p == 0


# NIST curve domain parameters (FIPS 186-4 appendix D / SEC 2).
P256 = Curve(
    name="nistp256",
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=-3,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    gx=0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
    gy=0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
    n=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
)
P384 = Curve(
    name="nistp384",
    p=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFE_FFFFFFFF0000000000000000FFFFFFFF,
    a=-3,
    b=0xB3312FA7E23EE7E4988E056BE3F82D19181D9C6EFE8141120314088F5013875A_C656398D8A2ED19D2A85C8EDD3EC2AEF,
    gx=0xAA87CA22BE8B05378EB1C71EF320AD746E1D3B628BA79B9859F741E082542A38_5502F25DBF55296C3A545E3872760AB7,
    gy=0x3617DE4A96262C6F5D9E98BF9292DC29F8F41DBD289A147CE9DA3113B5F0B8C0_0A60B1CE1D7E819D7A431D7C90EA0E5F,
    n=0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFC7634D81F4372DDF_581A0DB248B0A77AECEC196ACCC52973,
)
P521 = Curve(
    name="nistp521",
    p=(1 << 521) - 1,
    a=-3,
    b=0x0051953EB9618E1C9A1F929A21A0B68540EEA2DA725B99B315F3B8B489918EF1_09E156193951EC7E937B1652C0BD3BB1BF073573DF883D2C34F1EF451FD46B50_3F00,
    gx=0x00C6858E06B70404E9CD9E3ECB662395B4429C648139053FB521F828AF606B4D_3DBAA14B5E77EFE75928FE1DC127A2FFA8DE3348B3C1856A429BF97E7E31C2E5_BD66,
    gy=0x011839296A789A3BC0045C8A5FB42C7D1BD998F54449579B446817AFBD17273E_662C97EE72995EF42640C550B9013FAD0761353C7086A272C24088BE94769FD1_6650,
    n=6864797660130609714981900799081393217269435300143305409394463459185543183397655394245057746333217197532963996371363321113864768612440380340372808892707005449,
)

CURVES: dict[EcCurveId, Curve] = {
    EcCurveId.P256: P256,
    EcCurveId.P384: P384,
    EcCurveId.P521: P521,
}

# SSH pairs each ECDSA curve with the hash of matching strength.
CURVE_HASHES: dict[EcCurveId, str] = {
    EcCurveId.P256: "sha256",
    EcCurveId.P384: "sha384",
    EcCurveId.P521: "sha512",
}

# Affine point or None for the identity.
Point = tuple[int, int] | None


def add(c: Curve, P: Point, Q: Point) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % c.p == 0:
            return None
        num = (3 * x1 * x1 + c.a) % c.p
        den = (2 * y1) % c.p
    else:
        num = (y2 - y1) % c.p
        den = (x2 - x1) % c.p
    lam = num * pow(den, -1, c.p) % c.p
    x3 = (lam * lam - x1 - x2) % c.p
    y3 = (lam * (x1 - x3) - y1) % c.p
    return (x3, y3)


# Jacobian coordinates (X, Y, Z) with x = X/Z^2, y = Y/Z^3 keep scalar
# multiplication inversion-free; only the final conversion inverts.

def _jac_double(c: Curve, P):
    X, Y, Z = P
    if Y == 0:
        return (0, 1, 0)
    p = c.p
    Y2 = Y * Y % p
    S = 4 * X * Y2 % p
    Z2 = Z * Z % p
    M = (3 * X * X + c.a * Z2 % p * Z2) % p
    X3 = (M * M - 2 * S) % p
    Y3 = (M * (S - X3) - 8 * Y2 * Y2) % p
    Z3 = 2 * Y * Z % p
    return (X3, Y3, Z3)


def _jac_add(c: Curve, P, Q):
    if P[2] == 0:
        return Q
    if Q[2] == 0:
        return P
    p = c.p
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    Z1Z1 = Z1 * Z1 % p
    Z2Z2 = Z2 * Z2 % p
    U1 = X1 * Z2Z2 % p
    U2 = X2 * Z1Z1 % p
    S1 = Y1 * Z2Z2 % p * Z2 % p
    S2 = Y2 * Z1Z1 % p * Z1 % p
    if U1 == U2:
        if S1 != S2:
            return (0, 1, 0)
        return _jac_double(c, P)
    H = (U2 - U1) % p
    R = (S2 - S1) % p
    H2 = H * H % p
    H3 = H2 * H % p
    U1H2 = U1 * H2 % p
    X3 = (R * R - H3 - 2 * U1H2) % p
    Y3 = (R * (U1H2 - X3) - S1 * H3) % p
    Z3 = H * Z1 % p * Z2 % p
    return (X3, Y3, Z3)


def mul(c: Curve, k: int, P: Point) -> Point:
    k = int(k)
    if P is None or k == 0:
        return None
    if k < 0:
        k = -k
        P = (P[0], (-P[1]) % c.p)
    R = (0, 1, 0)
    Q = (P[0], P[1], 1)
    while k:
        if k & 1:
            R = _jac_add(c, R, Q)
        Q = _jac_double(c, Q)
        k >>= 1
    if R[2] == 0:
        return None
    zinv = pow(R[2], -1, c.p)
    z2 = zinv * zinv % c.p
    return (R[0] * z2 % c.p, R[1] * z2 % c.p * zinv % c.p)


def order_divides(c: Curve, P: Point) -> bool:
    """True when n*P is the identity (P lies in the prime-order subgroup)."""
    return mul(c, c.n, P) is None


def base_mul(c: Curve, k: int) -> Point:
    return mul(c, k, (c.gx, c.gy))


def encode_point(c: Curve, P: Point) -> bytes:
    """Uncompressed SEC1 encoding; the identity encodes as a single zero byte."""
    if P is None:
        return b"\x00"
    size = c.coord_bytes
    return b"\x04" + P[0].to_bytes(size, "big") + P[1].to_bytes(size, "big")


def decode_point(c: Curve, data: bytes) -> Point:
    """Strict uncompressed SEC1 decode; raises NotOnCurveError on any defect."""
    if data == b"\x00":
        raise NotOnCurveError("point at infinity")
    size = c.coord_bytes
    if len(data) != 1 + 2 * size or data[0] != 0x04:
        raise NotOnCurveError("not an uncompressed SEC1 point of expected length")
    x = int.from_bytes(data[1 : 1 + size], "big")
    y = int.from_bytes(data[1 + size :], "big")
    if x >= c.p or y >= c.p:
        raise NotOnCurveError("coordinate out of field range")
    if not c.contains(x, y):
        raise NotOnCurveError("point does not satisfy curve equation")
    return (x, y)


def digest_bits_to_int(digest: bytes, n: int) -> int:
    """Leftmost bitlen(n) bits of the digest, per the (EC)DSA conversion rule."""
    h = int.from_bytes(digest, "big")
    extra = 8 * len(digest) - n.bit_length()
    if extra > 0:
        h >>= extra
    return h


def hash_for_curve(curve_id: EcCurveId, data: bytes) -> bytes:
    return hashlib.new(CURVE_HASHES[curve_id], data).digest()


# ---------------------------------------------------------------------------
# edwards25519 (RFC 8032): enough arithmetic to decode public keys, check
# point orders and build small-order test points.

ED_P = 2**255 - 19
ED_L = 2**252 + 27742317777372353535851937790883648493  # prime subgroup order
ED_D = (-121665 * pow(121666, -1, ED_P)) % ED_P
_ED_SQRT_M1 = pow(2, (ED_P - 1) // 4, ED_P)

EdPoint = tuple[int, int]  # affine (x, y); identity is (0, 1)
ED_IDENTITY: EdPoint = (0, 1)

ED_BASE: EdPoint = (
    15112221349535400772501151409588531511454012693041857206046113283949847762202,
    46316835694926478169428394003475163141307993866256225615783033603165251855960,
)


def ed_add(P: EdPoint, Q: EdPoint) -> EdPoint:
    x1, y1 = P
    x2, y2 = Q
    dxy = ED_D * x1 * x2 % ED_P * y1 * y2 % ED_P
    x3 = (x1 * y2 + x2 * y1) * pow(1 + dxy, -1, ED_P) % ED_P
    y3 = (y1 * y2 + x1 * x2) * pow(1 - dxy, -1, ED_P) % ED_P
    return (x3, y3)


def ed_mul(k: int, P: EdPoint) -> EdPoint:
    R = ED_IDENTITY
    Q = P
    while k:
        if k & 1:
            R = ed_add(R, Q)
        Q = ed_add(Q, Q)
        k >>= 1
    return R


def ed_on_curve(P: EdPoint) -> bool:
    x, y = P
    return (-x * x + y * y - 1 - ED_D * x * x % ED_P * y * y) % ED_P == 0


def ed_decode(data: bytes) -> EdPoint:
    """RFC 8032 section 5.1.3 point decoding; raises ValueError on failure."""
    if len(data) != 32:
        raise ValueError("encoded point must be 32 bytes")
    y = int.from_bytes(data, "little")
    sign = y >> 255
    y &= (1 << 255) - 1
    if y >= ED_P:
        raise ValueError("non-canonical y coordinate")
    # x^2 = (y^2 - 1) / (d y^2 + 1)
    u = (y * y - 1) % ED_P
    v = (ED_D * y * y + 1) % ED_P
    x = u * pow(v, 3, ED_P) % ED_P * pow(u * pow(v, 7, ED_P), (ED_P - 5) // 8, ED_P) % ED_P
    if v * x * x % ED_P == u:
        pass
    elif v * x * x % ED_P == (-u) % ED_P:
        x = x * _ED_SQRT_M1 % ED_P
    else:
        raise ValueError("x coordinate is not a quadratic residue")
    if x == 0 and sign:
        raise ValueError("invalid sign bit for x = 0")
    if x & 1 != sign:
        x = ED_P - x
    return (x, y)


def ed_encode(P: EdPoint) -> bytes:
    x, y = P
    return (y | ((x & 1) << 255)).to_bytes(32, "little")


def ed_point_order_cofactor(P: EdPoint) -> int:
    """Smallest c in {1, 2, 4, 8} with (c*L)*P = identity, or 0 if none.

    Honest keys return 1. A return of 8 means the key carries a full
    8-torsion component, i.e. its order is 8*L.
    """
    Q = ed_mul(ED_L, P)
    for c in (1, 2, 4, 8):
        if Q == ED_IDENTITY:
            return c
        Q = ed_add(Q, Q)
    return 0


def ed_small_order_point(order: int) -> EdPoint:
    """Return a point of exact small order (2, 4 or 8) on edwards25519."""
    if order == 2:
        return (0, ED_P - 1)
    if order == 4:
        return (_ED_SQRT_M1, 0)
    if order != 8:
        raise ValueError("order must be 2, 4 or 8")
    # The torsion subgroup has index L in the full group: L*P of a random
    # point is an 8-torsion point, of exact order 8 half the time. Scan
    # deterministically derived candidates until one works.
    counter = 0
    while True:
        counter += 1
        data = bytearray(hashlib.sha256(b"torsion%d" % counter).digest())
        data[31] &= 0x7F
        try:
            P = ed_decode(bytes(data))
        except ValueError:
            continue
        T = ed_mul(ED_L, P)
        if ed_mul(4, T) != ED_IDENTITY:
            return T
