"""Captured client-authentication signature samples.

A SignatureSample is one observed publickey authentication attempt: the
exact byte string the client signed, the signature it produced, and enough
context (session id, attempt index) to reason about repeat behaviour.
Samples serialize to JSON-lines with hex-encoded byte fields so captures
can move between the harness, the bias tests and the lattice attack.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict

from . import ec
from .wire import Reader, encode_string, decode_key_blob, PublicKey, Ecdsa, Dsa


@dataclass(frozen=True)
class SignatureSample:
    connection_id: int
    attempt_index: int
    username: str
    algorithm: str  # signature algorithm name as sent by the client
    public_key_blob: bytes
    signed_blob: bytes
    signature_blob: bytes  # wire form: string(sig-alg) || string(sig-bytes)
    session_id: bytes

    def public_key(self) -> PublicKey:
        return decode_key_blob(self.public_key_blob)

    def signature_parts(self) -> tuple[str, bytes]:
        r = Reader(self.signature_blob)
        alg = r.string().decode()
        data = r.string()
        r.expect_end()
        return alg, data

    def rs(self) -> tuple[int, int]:
        """Decode the (r, s) pair of a DSA or ECDSA signature."""
        alg, data = self.signature_parts()
        if alg.startswith("ecdsa-sha2-") or alg.startswith("sk-ecdsa"):
            rr = Reader(data)
            r_val, s_val = rr.mpint(), rr.mpint()
            rr.expect_end()
            return r_val, s_val
        if alg == "ssh-dss":
            if len(data) != 40:
                raise ValueError(f"ssh-dss signature must be 40 bytes, got {len(data)}")
            return int.from_bytes(data[:20], "big"), int.from_bytes(data[20:], "big")
        raise ValueError(f"{alg} signatures carry no (r, s) pair")

    def message_digest(self) -> bytes:
        """Digest of the signed blob under the algorithm's paired hash."""
        import hashlib

        key = self.public_key()
        if isinstance(key.body, Ecdsa):
            return ec.hash_for_curve(key.body.curve, self.signed_blob)
        if isinstance(key.body, Dsa):
            return hashlib.sha1(self.signed_blob).digest()
        raise ValueError(f"no nonce-bearing digest for {self.algorithm}")

    def to_json(self) -> str:
        record = asdict(self)
        for field_name in ("public_key_blob", "signed_blob", "signature_blob", "session_id"):
            record[field_name] = record[field_name].hex()
        return json.dumps(record)

    @classmethod
    def from_json(cls, line: str) -> "SignatureSample":
        record = json.loads(line)
        for field_name in ("public_key_blob", "signed_blob", "signature_blob", "session_id"):
            record[field_name] = bytes.fromhex(record[field_name])
        return cls(**record)


def encode_signature_blob(alg: str, data: bytes) -> bytes:
    return encode_string(alg.encode()) + encode_string(data)


def write_samples(path, samples) -> None:
    with open(path, "w") as fp:
        for sample in samples:
            fp.write(sample.to_json() + "\n")


def read_samples(path) -> list[SignatureSample]:
    with open(path) as fp:
        return [SignatureSample.from_json(line) for line in fp if line.strip()]
