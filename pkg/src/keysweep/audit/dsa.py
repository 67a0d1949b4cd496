"""DSA domain-parameter and public-key validation."""

from __future__ import annotations

from .. import primes
from ..wire import Dsa, PublicKey
from .model import AuditPolicy, Finding, Severity, WrongKeyTypeError


def validate_dsa(key: PublicKey, policy: AuditPolicy | None = None) -> list[Finding]:
    """Domain parameter validation plus full public key validation.

    Checks: p and q probable-prime, q | p-1, generator in range with
    g^q = 1 mod p and g != 1, public key in range with y^q = 1 mod p.
    Size policy: p below the discrete-log record is broken, below 2048
    weak; a subgroup other than 160 bits cannot be used for SSH at all
    (the signature blob has no length fields) and is flagged suspect.
    """
    if not isinstance(key.body, Dsa):
        raise WrongKeyTypeError(f"expected DSA key, got {key.family}")
    if policy is None:
        policy = AuditPolicy()
    p, q, g, y = key.body.p, key.body.q, key.body.g, key.body.y
    findings: list[Finding] = []

    p_prime = primes.is_probable_prime(p)
    q_prime = primes.is_probable_prime(q)
    if not p_prime:
        findings.append(Finding("dsa/p-not-prime", Severity.INVALID, {}))
    if not q_prime:
        findings.append(Finding("dsa/q-not-prime", Severity.INVALID, {}))
    if q < 2 or (p - 1) % q != 0:
        findings.append(Finding("dsa/q-not-divides-p1", Severity.INVALID, {}))

    if not 2 <= g <= p - 1:
        findings.append(Finding("dsa/generator-range", Severity.INVALID,
                                {"g_bits": g.bit_length()}))
    elif pow(g, q, p) != 1:
        findings.append(Finding("dsa/generator-order", Severity.INVALID, {}))

    if not 2 <= y <= p - 1:
        findings.append(Finding("dsa/pubkey-range", Severity.INVALID,
                                {"y_bits": y.bit_length()}))
    elif pow(y, q, p) != 1:
        findings.append(Finding("dsa/pubkey-order", Severity.INVALID, {}))

    bits = p.bit_length()
    if bits < policy.dsa_broken_bits:
        findings.append(Finding("dsa/modulus-broken-bitlen", Severity.BROKEN,
                                {"bits": bits, "threshold": policy.dsa_broken_bits}))
    if bits < policy.dsa_min_bits:
        findings.append(Finding("dsa/modulus-weak-bitlen", Severity.WEAK,
                                {"bits": bits, "threshold": policy.dsa_min_bits}))
    if q.bit_length() != policy.dsa_subgroup_bits:
        findings.append(Finding("dsa/subgroup-size", Severity.SUSPECT,
                                {"q_bits": q.bit_length(),
                                 "note": "unusable in SSH"}))
    return findings
