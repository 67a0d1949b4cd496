"""Findings, severities and the audit policy knobs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from enum import Enum


class WrongKeyTypeError(TypeError):
    pass


class Severity(str, Enum):
    BROKEN = "broken"    # private key recoverable (or key compromised)
    WEAK = "weak"        # below current strength recommendations
    SUSPECT = "suspect"  # irregular, possibly corrupt or nonstandard
    INVALID = "invalid"  # fails mandatory structural validation
    INFO = "info"

    @property
    def rank(self) -> int:
        return {"broken": 4, "invalid": 3, "weak": 2, "suspect": 1, "info": 0}[self.value]


@dataclass(frozen=True)
class Finding:
    test_id: str
    severity: Severity
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        record = asdict(self)
        record["severity"] = self.severity.value
        return record


def factor_finding(test_id: str, n: int, factors: list[int], extra: dict | None = None,
                   severity: Severity = Severity.BROKEN) -> Finding:
    """Build a Broken finding backed by verified nontrivial factors of n."""
    for f in factors:
        if not 1 < f < n or n % f != 0:
            raise ValueError(f"{test_id}: claimed factor {f} does not divide {n}")
    evidence = {"factors": [hex(f) for f in factors]}
    if extra:
        evidence.update(extra)
    return Finding(test_id, severity, evidence)


@dataclass
class AuditPolicy:
    """Thresholds for the key battery.

    Defaults: RSA below 2048 bits is weak and at or below 829 bits (the
    largest publicly factored modulus) broken; exponents must be odd, at
    least 3, and inside [2^16+1, 2^256-1]; the small-factor scan covers the
    first million primes; Fermat runs 100 rounds; DSA below 2048 bits is
    weak and below 795 bits (the discrete-log record) broken.
    """

    rsa_min_bits: int = 2048
    rsa_broken_bits: int = 829
    exponent_min: int = 2**16 + 1
    exponent_max: int = 2**256 - 1
    small_prime_count: int = 10**6
    fermat_rounds: int = 100
    dsa_min_bits: int = 2048
    dsa_broken_bits: int = 795
    dsa_subgroup_bits: int = 160
    ecm_b1: int = 50_000
    ecm_curves: int = 100
    ecm_trigger_prime_count: int = 10**4  # small factor below this rank queues ECM
    seed: int = 0

    def __post_init__(self):
        numeric = [self.rsa_min_bits, self.rsa_broken_bits, self.exponent_min,
                   self.exponent_max, self.small_prime_count, self.fermat_rounds,
                   self.dsa_min_bits, self.dsa_broken_bits, self.dsa_subgroup_bits,
                   self.ecm_b1, self.ecm_curves, self.ecm_trigger_prime_count]
        if any(v <= 0 for v in numeric):
            raise ValueError("all policy thresholds must be positive")
        if self.rsa_broken_bits >= self.rsa_min_bits:
            raise ValueError("rsa_broken_bits must be below rsa_min_bits")
        if self.dsa_broken_bits >= self.dsa_min_bits:
            raise ValueError("dsa_broken_bits must be below dsa_min_bits")

    @classmethod
    def from_file(cls, path) -> "AuditPolicy":
        """Load a policy from a JSON file of {field: value} overrides."""
        with open(path) as fp:
            overrides = json.load(fp)
        unknown = set(overrides) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ValueError(f"unknown policy keys: {sorted(unknown)}")
        return cls(**overrides)

    def to_file(self, path) -> None:
        with open(path, "w") as fp:
            json.dump(asdict(self), fp, indent=2, sort_keys=True)
            fp.write("\n")


@dataclass
class AuditReport:
    """All findings for one key, plus identification context."""

    key_id: str  # SHA256 fingerprint, or a positional id for unparsable input
    algorithm: str
    parameters: dict = field(default_factory=dict)  # bitlen / curve summary
    findings: list[Finding] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def worst(self) -> Severity | None:
        return max((f.severity for f in self.findings), key=lambda s: s.rank, default=None)

    def above(self, severity: Severity) -> list[Finding]:
        return [f for f in self.findings if f.severity.rank >= severity.rank]

    def to_json(self) -> str:
        return json.dumps({
            "key_id": self.key_id,
            "algorithm": self.algorithm,
            "parameters": self.parameters,
            "findings": [f.to_json() for f in self.findings],
            "notes": self.notes,
        }, sort_keys=True)
