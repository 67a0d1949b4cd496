"""Classify a client's nonce-generation scheme from captured signatures.

Requires the client's private key (lab setting): each captured signature's
nonce is recovered and compared against the known deterministic schemes.
When no scheme matches, two signatures over the identical payload separate
"unknown deterministic" from "randomized".
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum

from .. import ec
from ..samples import SignatureSample
from ..wire import Dsa, Ecdsa
from .kproto import kproto_k, KPROTO_LABELS
from .rfc6979 import rfc6979_k
from .signatures import recover_k


class Classification(str, Enum):
    RFC6979 = "rfc6979"
    KPROTO = "kproto"
    DETERMINISTIC_UNKNOWN = "deterministic-unknown"
    RANDOMIZED = "randomized"
    INCONCLUSIVE = "inconclusive"


class MixedKeysError(ValueError):
    pass


class NoSamplesError(ValueError):
    pass


class UnsupportedAlgorithmError(ValueError):
    pass


@dataclass
class SchemeVerdict:
    classification: Classification
    evidence: dict = field(default_factory=dict)


def _group_order_and_hash(sample: SignatureSample) -> tuple[int, str]:
    body = sample.public_key().body
    if isinstance(body, Ecdsa):
        return ec.CURVES[body.curve].n, ec.CURVE_HASHES[body.curve]
    if isinstance(body, Dsa):
        return body.q, "sha1"
    raise UnsupportedAlgorithmError(
        f"nonce fingerprinting applies to (EC)DSA, not {sample.algorithm}"
    )


def fingerprint_scheme(samples: list[SignatureSample], x: int,
                       label_candidates: list[bytes] | None = None) -> SchemeVerdict:
    """Decide the nonce scheme behind a batch of same-key (EC)DSA samples.

    Decision order: an exact nonce match against RFC 6979, then against the
    PuTTY-style scheme for every configured label; failing that, repeated
    signatures over one payload distinguish unknown-deterministic from
    randomized, and a single lone sample stays inconclusive.
    """
    if not samples:
        raise NoSamplesError("no samples to classify")
    if len({s.public_key_blob for s in samples}) != 1:
        raise MixedKeysError("samples span multiple public keys")
    labels = label_candidates if label_candidates is not None else list(KPROTO_LABELS.values())

    q, hash_name = _group_order_and_hash(samples[0])
    for sample in samples:
        digest = sample.message_digest()
        h = ec.digest_bits_to_int(digest, q)
        k = recover_k(sample.rs(), h, x, q)
        if k == rfc6979_k(x, digest, q, hash_name):
            return SchemeVerdict(Classification.RFC6979, {
                "matched_nonce": hex(k), "attempt_index": sample.attempt_index})
        for label in labels:
            if k == kproto_k(label, x, digest, q):
                return SchemeVerdict(Classification.KPROTO, {
                    "matched_nonce": hex(k), "label": label.decode("ascii", "replace"),
                    "attempt_index": sample.attempt_index})

    by_blob: dict[bytes, list[SignatureSample]] = {}
    for sample in samples:
        by_blob.setdefault(sample.signed_blob, []).append(sample)
    for blob, group in by_blob.items():
        if len(group) < 2:
            continue
        sigs = {s.signature_blob for s in group}
        if len(sigs) == 1:
            return SchemeVerdict(Classification.DETERMINISTIC_UNKNOWN, {
                "repeated_signature": group[0].signature_blob.hex(),
                "payload_sha256": hashlib.sha256(blob).hexdigest()})
        return SchemeVerdict(Classification.RANDOMIZED, {
            "distinct_signatures": len(sigs), "attempts": len(group)})
    return SchemeVerdict(Classification.INCONCLUSIVE, {
        "samples": len(samples),
        "note": "no repeated payload captured; known deterministic schemes ruled out"})
