"""Ed25519 public key validation: decoding and point order."""

from __future__ import annotations

from .. import ec
from ..wire import Ed25519, PublicKey
from .model import Finding, Severity, WrongKeyTypeError


def validate_ed25519(key: PublicKey) -> list[Finding]:
    """Decode per RFC 8032 and check the point's order.

    Keys that fail decoding are rejected by every verifier and therefore
    unusable; keys whose order is not exactly the prime subgroup order L
    indicate a corrupt or non-standard generator and are reported with the
    order structure as evidence.
    """
    if not isinstance(key.body, Ed25519):
        raise WrongKeyTypeError(f"expected Ed25519 key, got {key.family}")
    try:
        point = ec.ed_decode(key.body.a)
    except ValueError as exc:
        return [Finding("ed25519/encoding", Severity.INVALID, {"reason": str(exc)})]

    if ec.ed_mul(8, point) == ec.ED_IDENTITY:
        order = next(c for c in (1, 2, 4, 8)
                     if ec.ed_mul(c, point) == ec.ED_IDENTITY)
        return [Finding("ed25519/point-order", Severity.SUSPECT,
                        {"order": str(order), "note": "small-order point"})]
    cofactor = ec.ed_point_order_cofactor(point)
    if cofactor == 1:
        return []
    return [Finding("ed25519/point-order", Severity.SUSPECT,
                    {"order": f"{cofactor}*L", "cofactor": cofactor})]
