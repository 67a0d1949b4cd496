"""ECDSA full public key validation (identity, bounds, curve, order)."""

from __future__ import annotations

from .. import ec
from ..wire import Ecdsa, PublicKey
from .model import Finding, Severity, WrongKeyTypeError


def validate_ecdsa(key: PublicKey) -> list[Finding]:
    """Full public key validation for the three supported NIST curves.

    Stops at the first structural failure: a point with an out-of-range
    coordinate cannot meaningfully be tested against the curve equation, so
    each defective key yields exactly one finding.
    """
    if not isinstance(key.body, Ecdsa):
        raise WrongKeyTypeError(f"expected ECDSA key, got {key.family}")
    curve = ec.CURVES.get(key.body.curve)
    if curve is None:
        return [Finding("ecdsa/unsupported-curve", Severity.INVALID,
                        {"curve": str(key.body.curve)})]
    data = key.body.point

    if data == b"\x00":
        return [Finding("ecdsa/identity", Severity.INVALID,
                        {"note": "point at infinity"})]
    size = curve.coord_bytes
    if len(data) != 1 + 2 * size or data[0] != 0x04:
        return [Finding("ecdsa/encoding", Severity.INVALID,
                        {"length": len(data), "expected": 1 + 2 * size,
                         "prefix": data[:1].hex() if data else ""})]
    x = int.from_bytes(data[1 : 1 + size], "big")
    y = int.from_bytes(data[1 + size :], "big")
    if x >= curve.p or y >= curve.p:
        return [Finding("ecdsa/coordinate-range", Severity.INVALID,
                        {"x_over": x >= curve.p, "y_over": y >= curve.p})]
    if not curve.contains(x, y):
        return [Finding("ecdsa/not-on-curve", Severity.INVALID, {})]
    if ec.mul(curve, curve.n, (x, y)) is not None:
        return [Finding("ecdsa/point-order", Severity.INVALID,
                        {"note": "n*Q is not the identity"})]
    return []
