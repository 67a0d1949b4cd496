"""Weak-key battery: per-key policy checks, factoring probes, batch GCD."""

from .model import (
    AuditPolicy, Finding, Severity, AuditReport, WrongKeyTypeError,
    factor_finding,
)
from .rsa import audit_rsa, small_prime_scan, fermat_factor, roca_check, ecm_factor
from .batchgcd import batch_gcd, BatchGcdForest, GcdResult, GcdClass
from .dsa import validate_dsa
from .ecdsa import validate_ecdsa
from .ed25519 import validate_ed25519
from .blocklist import BlocklistSet, blocklist_check, MalformedBlocklistFileError
from .pipeline import audit_keys, audit_corpus_items, AuditItem

__all__ = [
    "AuditPolicy", "Finding", "Severity", "AuditReport", "WrongKeyTypeError",
    "factor_finding",
    "audit_rsa", "small_prime_scan", "fermat_factor", "roca_check", "ecm_factor",
    "batch_gcd", "BatchGcdForest", "GcdResult", "GcdClass",
    "validate_dsa", "validate_ecdsa", "validate_ed25519",
    "BlocklistSet", "blocklist_check", "MalformedBlocklistFileError",
    "audit_keys", "audit_corpus_items", "AuditItem",
]
