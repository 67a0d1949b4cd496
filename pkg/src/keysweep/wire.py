"""SSH public key wire formats.

Bit-exact parsing and encoding of authorized_keys lines and binary key
blobs (RFC 4253 section 6.6, data types per RFC 4251 section 5). Corrupt
but decodable keys are preserved rather than dropped: a key whose modulus
was damaged in transit is still interesting to an auditor.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import struct
from dataclasses import dataclass
from enum import Enum


class WireError(Exception):
    """Base class for key parsing/encoding failures."""


class EmptyLineError(WireError):
    pass


class MalformedBlobError(WireError):
    pass


class TrailingBytesError(MalformedBlobError):
    pass


class UnknownAlgorithmError(WireError):
    def __init__(self, algorithm: str, blob: bytes | None = None):
        super().__init__(f"unsupported key algorithm {algorithm!r}")
        self.algorithm = algorithm
        self.blob = blob


# ---------------------------------------------------------------------------
# RFC 4251 section 5 data types. These helpers are shared by every module
# that speaks the SSH wire format (key blobs, signature blobs, packets).

def encode_uint32(value: int) -> bytes:
    return struct.pack(">I", value)


def encode_string(data: bytes) -> bytes:
    return struct.pack(">I", len(data)) + data


def encode_boolean(value: bool) -> bytes:
    return b"\x01" if value else b"\x00"


def encode_mpint(value: int) -> bytes:
    """Minimal two's-complement mpint encoding of a non-negative integer."""
    if value < 0:
        raise ValueError("negative mpint not supported")
    if value == 0:
        return encode_string(b"")
    raw = value.to_bytes((value.bit_length() + 7) // 8, "big")
    if raw[0] & 0x80:
        raw = b"\x00" + raw
    return encode_string(raw)


class Reader:
    """Sequential reader over a wire-format byte string."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0

    def remaining(self) -> int:
        return len(self._data) - self._pos

    def uint32(self) -> int:
        if self.remaining() < 4:
            raise MalformedBlobError("truncated uint32")
        value = struct.unpack_from(">I", self._data, self._pos)[0]
        self._pos += 4
        return value

    def byte(self) -> int:
        if self.remaining() < 1:
            raise MalformedBlobError("truncated byte")
        value = self._data[self._pos]
        self._pos += 1
        return value

    def boolean(self) -> bool:
        return self.byte() != 0

    def string(self) -> bytes:
        length = self.uint32()
        if self.remaining() < length:
            raise MalformedBlobError(
                f"string length {length} exceeds remaining {self.remaining()} bytes"
            )
        value = self._data[self._pos : self._pos + length]
        self._pos += length
        return value

    def mpint(self) -> int:
        raw = self.string()
        if raw and raw[0] & 0x80:
            raise MalformedBlobError("negative mpint in key blob")
        return int.from_bytes(raw, "big")

    def expect_end(self) -> None:
        if self.remaining():
            raise TrailingBytesError(f"{self.remaining()} trailing bytes after key blob")


# ---------------------------------------------------------------------------
# Key model

class EcCurveId(str, Enum):
    P256 = "nistp256"
    P384 = "nistp384"
    P521 = "nistp521"


@dataclass(frozen=True)
class Rsa:
    e: int
    n: int


@dataclass(frozen=True)
class Dsa:
    p: int
    q: int
    g: int
    y: int


@dataclass(frozen=True)
class Ecdsa:
    curve: EcCurveId
    point: bytes  # raw SEC1 octets, preserved verbatim even when invalid


@dataclass(frozen=True)
class Ed25519:
    a: bytes  # 32-byte encoded point, canonicality checked during audit


KeyBody = Rsa | Dsa | Ecdsa | Ed25519

# Wire names handled natively. The sk- variants carry the same cryptographic
# body plus a U2F application string; they are folded into the base families
# with a provenance flag.
_ECDSA_ALGOS = {
    "ecdsa-sha2-nistp256": EcCurveId.P256,
    "ecdsa-sha2-nistp384": EcCurveId.P384,
    "ecdsa-sha2-nistp521": EcCurveId.P521,
}
SUPPORTED_ALGORITHMS = frozenset(
    {"ssh-rsa", "ssh-dss", "ssh-ed25519", "sk-ssh-ed25519@openssh.com",
     "sk-ecdsa-sha2-nistp256@openssh.com"} | set(_ECDSA_ALGOS)
)


@dataclass(frozen=True)
class PublicKey:
    algorithm: str
    body: KeyBody
    security_key: bool = False
    sk_application: bytes = b""

    @property
    def family(self) -> str:
        """Algorithm family for statistics: RSA, DSA, ECDSA or Ed25519."""
        return _FAMILY[type(self.body)]


_FAMILY = {Rsa: "RSA", Dsa: "DSA", Ecdsa: "ECDSA", Ed25519: "Ed25519"}


class ParseStatus(Enum):
    OK = "ok"
    DECODE_FAILED = "decode-failed"  # base64 payload is not decodable


@dataclass(frozen=True)
class KeyLine:
    status: ParseStatus
    key: PublicKey | None
    raw: str
    options: str | None = None
    comment: str | None = None
    payload: bytes = b""  # decoded blob when status is OK, else the raw base64 text

    def rebuild(self) -> str:
        """Re-serialize to an authorized_keys line (whitespace-normalized)."""
        if self.key is None:
            raise WireError("cannot rebuild a line that failed to decode")
        parts = []
        if self.options:
            parts.append(self.options)
        parts.append(self.key.algorithm)
        parts.append(base64.b64encode(self.payload or encode_key_blob(self.key)).decode())
        if self.comment:
            parts.append(self.comment)
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Blob decode/encode

def decode_key_blob(blob: bytes) -> PublicKey:
    """Decode a binary SSH public key blob into the typed key model.

    Raises MalformedBlobError (inconsistent lengths, name mismatches,
    negative mpints), TrailingBytesError (extra data after the last field)
    or UnknownAlgorithmError. Integer values are preserved exactly.
    """
    r = Reader(blob)
    try:
        name = r.string().decode("ascii")
    except UnicodeDecodeError as exc:
        raise MalformedBlobError("algorithm name is not ASCII") from exc

    if name == "ssh-rsa":
        e, n = r.mpint(), r.mpint()
        r.expect_end()
        return PublicKey(name, Rsa(e=e, n=n))

    if name == "ssh-dss":
        p, q, g, y = r.mpint(), r.mpint(), r.mpint(), r.mpint()
        r.expect_end()
        return PublicKey(name, Dsa(p=p, q=q, g=g, y=y))

    if name in _ECDSA_ALGOS or name == "sk-ecdsa-sha2-nistp256@openssh.com":
        sk = name.startswith("sk-")
        base = name[3:].split("@")[0] if sk else name
        curve = _ECDSA_ALGOS[base]
        inner = r.string().decode("ascii", "replace")
        if inner != curve.value:
            raise MalformedBlobError(
                f"curve name {inner!r} does not match algorithm {name!r}"
            )
        point = r.string()
        app = r.string() if sk else b""
        r.expect_end()
        return PublicKey(name, Ecdsa(curve=curve, point=point),
                         security_key=sk, sk_application=app)

    if name in ("ssh-ed25519", "sk-ssh-ed25519@openssh.com"):
        sk = name.startswith("sk-")
        a = r.string()
        if len(a) != 32:
            raise MalformedBlobError(f"ed25519 key must be 32 bytes, got {len(a)}")
        app = r.string() if sk else b""
        r.expect_end()
        return PublicKey(name, Ed25519(a=a), security_key=sk, sk_application=app)

    raise UnknownAlgorithmError(name, blob)


def encode_key_blob(key: PublicKey) -> bytes:
    """Encode a PublicKey to its canonical (minimal-mpint) wire blob."""
    out = [encode_string(key.algorithm.encode())]
    body = key.body
    if isinstance(body, Rsa):
        out += [encode_mpint(body.e), encode_mpint(body.n)]
    elif isinstance(body, Dsa):
        out += [encode_mpint(body.p), encode_mpint(body.q),
                encode_mpint(body.g), encode_mpint(body.y)]
    elif isinstance(body, Ecdsa):
        out += [encode_string(body.curve.value.encode()), encode_string(body.point)]
    elif isinstance(body, Ed25519):
        out.append(encode_string(body.a))
    else:  # pragma: no cover - exhaustive over KeyBody
        raise TypeError(f"unsupported key body {type(body)!r}")
    if key.security_key:
        out.append(encode_string(key.sk_application))
    return b"".join(out)


# ---------------------------------------------------------------------------
# authorized_keys lines

def _split_options(text: str) -> tuple[str, str]:
    """Split a leading options field from the rest of the line.

    Options may contain quoted strings with embedded spaces and escaped
    quotes (e.g. command="echo \"hi\" there",no-pty).
    """
    quoted = False
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and quoted:
            i += 2
            continue
        if ch == '"':
            quoted = not quoted
        elif ch in " \t" and not quoted:
            return text[:i], text[i:].lstrip()
        i += 1
    raise MalformedBlobError("line ends inside options field")


def _looks_like_algorithm(token: str) -> bool:
    return token in SUPPORTED_ALGORITHMS or (
        token.replace("@", "").replace(".", "").replace("-", "").isalnum()
        and ("ssh-" in token or "ecdsa-" in token or token.startswith("sk-"))
    )


def parse_authorized_keys_line(text: str) -> KeyLine:
    """Parse one authorized_keys line.

    Corrupt base64 yields a KeyLine with status DECODE_FAILED instead of an
    exception: damaged keys are audit subjects, not noise. Structural blob
    errors and unknown algorithms raise, so that callers can decide whether
    to keep an opaque record.
    """
    raw = text
    line = text.strip()
    if not line or line.startswith("#"):
        raise EmptyLineError("no key material on line")

    options: str | None = None
    fields = line.split(None, 1)
    if not _looks_like_algorithm(fields[0]):
        options, line = _split_options(line)
        fields = line.split(None, 1)
    if len(fields) < 2:
        raise MalformedBlobError("missing base64 key payload")
    algorithm, rest = fields[0], fields[1]
    rest_fields = rest.split(None, 1)
    b64 = rest_fields[0]
    comment = rest_fields[1].strip() if len(rest_fields) > 1 else None

    try:
        blob = base64.b64decode(b64, validate=True)
    except (binascii.Error, ValueError):
        return KeyLine(status=ParseStatus.DECODE_FAILED, key=None, raw=raw,
                       options=options, comment=comment, payload=b64.encode())

    key = decode_key_blob(blob)
    if key.algorithm != algorithm:
        raise MalformedBlobError(
            f"outer algorithm {algorithm!r} does not match blob {key.algorithm!r}"
        )
    return KeyLine(status=ParseStatus.OK, key=key, raw=raw,
                   options=options, comment=comment, payload=blob)


def parse_authorized_keys(text: str) -> list[KeyLine | WireError]:
    """Parse a whole authorized_keys file, one entry per non-empty line.

    Failures are returned in-line as the raised error values so callers can
    count and classify them without losing position information.
    """
    results: list[KeyLine | WireError] = []
    for line in text.splitlines():
        if not line.strip() or line.strip().startswith("#"):
            continue
        try:
            results.append(parse_authorized_keys_line(line))
        except WireError as exc:
            results.append(exc)
    return results


# ---------------------------------------------------------------------------
# Fingerprints

class FingerprintAlgo(str, Enum):
    SHA256 = "SHA256"
    MD5 = "MD5"


def fingerprint_blob(blob: bytes, algo: FingerprintAlgo = FingerprintAlgo.SHA256) -> str:
    """Fingerprint a raw key blob in standard SSH notation."""
    if algo is FingerprintAlgo.SHA256:
        digest = hashlib.sha256(blob).digest()
        return "SHA256:" + base64.b64encode(digest).decode().rstrip("=")
    digest = hashlib.md5(blob).digest()
    return "MD5:" + ":".join(f"{b:02x}" for b in digest)


def fingerprint(key: PublicKey, algo: FingerprintAlgo = FingerprintAlgo.SHA256) -> str:
    return fingerprint_blob(encode_key_blob(key), algo)
