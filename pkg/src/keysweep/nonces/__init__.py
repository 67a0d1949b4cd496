"""Nonce-generation schemes, nonce recovery and bias statistics."""

from .rfc6979 import rfc6979_k
from .kproto import kproto_k, KPROTO_LABELS
from .signatures import (
    ecdsa_sign_with_k,
    ecdsa_verify,
    recover_k,
    dsa_sign_with_k,
    dsa_verify,
    ZeroRorSError,
    NonInvertibleSError,
)
from .biastests import zbit_test, rayleigh_test, NonceSampleSet, TooFewSamplesError
from .fingerprint import fingerprint_scheme, SchemeVerdict, Classification

__all__ = [
    "rfc6979_k", "kproto_k", "KPROTO_LABELS",
    "ecdsa_sign_with_k", "ecdsa_verify", "recover_k",
    "dsa_sign_with_k", "dsa_verify",
    "ZeroRorSError", "NonInvertibleSError",
    "zbit_test", "rayleigh_test", "NonceSampleSet", "TooFewSamplesError",
    "fingerprint_scheme", "SchemeVerdict", "Classification",
]
