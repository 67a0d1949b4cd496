"""RSA key checks: policy conformance, small factors, Fermat, ROCA, ECM."""

from __future__ import annotations

import math
import random
from functools import lru_cache

import gmpy2

from .. import primes
from ..wire import PublicKey, Rsa
from .model import AuditPolicy, Finding, Severity, WrongKeyTypeError, factor_finding


def audit_rsa(key: PublicKey, policy: AuditPolicy | None = None) -> list[Finding]:
    """Structural and policy checks that need nothing but the key itself.

    Corpus-level probes (small-prime scan, Fermat, ROCA, blocklists, batch
    GCD) are orchestrated separately; see pipeline.audit_keys.
    """
    if not isinstance(key.body, Rsa):
        raise WrongKeyTypeError(f"expected RSA key, got {key.family}")
    if policy is None:
        policy = AuditPolicy()
    n, e = key.body.n, key.body.e
    findings: list[Finding] = []

    bits = n.bit_length()
    if bits <= policy.rsa_broken_bits:
        findings.append(Finding("rsa/modulus-broken-bitlen", Severity.BROKEN,
                                {"bits": bits, "threshold": policy.rsa_broken_bits}))
    if bits < policy.rsa_min_bits:
        findings.append(Finding("rsa/modulus-weak-bitlen", Severity.WEAK,
                                {"bits": bits, "threshold": policy.rsa_min_bits}))
    if bits % 8 != 0:
        findings.append(Finding("rsa/modulus-byte-boundary", Severity.SUSPECT,
                                {"bits": bits}))

    if e < 3 or e % 2 == 0:
        findings.append(Finding("rsa/exponent-invalid", Severity.INVALID,
                                {"e": hex(e)}))
    elif not policy.exponent_min <= e <= policy.exponent_max:
        findings.append(Finding("rsa/exponent-range", Severity.SUSPECT,
                                {"e": hex(e), "bits": e.bit_length()}))

    if n % 2 == 0:
        findings.append(Finding("rsa/modulus-even", Severity.SUSPECT, {}))

    power = primes.perfect_power(n)
    if power:
        base, exp = power
        findings.append(factor_finding("rsa/perfect-power", n, [base],
                                       {"exponent": exp}))
    return findings


# ---------------------------------------------------------------------------
# Small-prime scan via prime-product blocks

_BLOCK_SIZE = 2048


@lru_cache(maxsize=2)
def _product_blocks(prime_count: int):
    return primes.prime_product_blocks(primes.scan_primes(prime_count), _BLOCK_SIZE)


def _divisors_in(n: gmpy2.mpz, block: tuple[int, ...]) -> list[int]:
    if len(block) == 1:
        return [block[0]] if n % block[0] == 0 else []
    mid = len(block) // 2
    found: list[int] = []
    for half in (block[:mid], block[mid:]):
        prod = gmpy2.mpz(1)
        for p in half:
            prod *= p
        if gmpy2.gcd(n, prod) > 1:
            found += _divisors_in(n, half)
    return found


def small_prime_scan(n: int, prime_count: int = 10**6) -> list[int]:
    """Every prime in the scan set dividing n, each reported once.

    Works by GCD against precomputed prime-product blocks with binary
    descent into hitting blocks, not by per-prime trial division.
    """
    if n < 2:
        return []
    m = gmpy2.mpz(n)
    found: list[int] = []
    for chunk, product in _product_blocks(prime_count):
        g = gmpy2.gcd(m, product)
        if g > 1:
            found += _divisors_in(g, chunk)
    return found


def factor_multiplicity(n: int, p: int) -> tuple[int, int]:
    """(exponent of p in n, remaining cofactor)."""
    exp = 0
    while n % p == 0:
        n //= p
        exp += 1
    return exp, n


# ---------------------------------------------------------------------------
# Fermat factorization

def fermat_factor(n: int, rounds: int = 100) -> tuple[int, int] | None:
    """Factor n = (a-b)(a+b) when its prime factors straddle sqrt(n) closely.

    a starts at the largest integer <= sqrt(n); round i tests a + i. Round 0
    therefore catches perfect squares, and an honest (p, q) with p <= q and
    p*q = n is returned as soon as a^2 - n becomes a perfect square.
    """
    if n < 4:
        return None
    a0 = math.isqrt(n)
    for i in range(rounds + 1):
        a = a0 + i
        b2 = a * a - n
        if b2 < 0:
            continue
        b = math.isqrt(b2)
        if b * b == b2 and a - b > 1:
            return (a - b, a + b)
    return None


# ---------------------------------------------------------------------------
# ROCA fingerprint

# Small primes whose 65537-generated subgroups form the detection table.
# Keys from the flawed generator satisfy n mod p in <65537> for every one of
# them; a random modulus passes all 17 with probability around 2^-27.
_ROCA_PRIMES = (11, 13, 17, 19, 37, 53, 61, 71, 73, 79, 97, 103, 107, 109,
                127, 151, 157)


@lru_cache(maxsize=1)
def roca_table() -> dict[int, frozenset[int]]:
    """Subgroup membership table, regenerated from its definition."""
    table = {}
    for p in _ROCA_PRIMES:
        members = set()
        x = 1
        while True:
            members.add(x)
            x = x * 65537 % p
            if x == 1:
                break
        table[p] = frozenset(members)
    return table


def roca_check(n: int) -> bool:
    """True when n carries the fingerprint of the flawed RSALib generator."""
    return all(n % p in members for p, members in roca_table().items())


# ---------------------------------------------------------------------------
# ECM stage 1 on Montgomery curves

def _mont_double(X, Z, a24, n):
    t1 = (X + Z) % n
    t2 = (X - Z) % n
    t1sq = t1 * t1 % n
    t2sq = t2 * t2 % n
    diff = (t1sq - t2sq) % n
    return t1sq * t2sq % n, diff * (t2sq + a24 * diff) % n


def _mont_add(X1, Z1, X2, Z2, Xd, Zd, n):
    # differential addition: (X1:Z1) + (X2:Z2) given their difference (Xd:Zd)
    u = (X1 - Z1) * (X2 + Z2) % n
    v = (X1 + Z1) * (X2 - Z2) % n
    return Zd * pow(u + v, 2, n) % n, Xd * pow(u - v, 2, n) % n


def _mont_ladder(k, X, Z, a24, n):
    X1, Z1 = X, Z
    X2, Z2 = _mont_double(X, Z, a24, n)
    for bit in bin(k)[3:]:
        if bit == "1":
            X1, Z1 = _mont_add(X2, Z2, X1, Z1, X, Z, n)
            X2, Z2 = _mont_double(X2, Z2, a24, n)
        else:
            X2, Z2 = _mont_add(X1, Z1, X2, Z2, X, Z, n)
            X1, Z1 = _mont_double(X1, Z1, a24, n)
    return X1, Z1


def ecm_factor(n: int, b1: int = 50_000, curves: int = 100,
               rng: random.Random | None = None) -> int | None:
    """Stage-1 elliptic curve factoring over random Montgomery curves.

    Each curve multiplies a point by every prime power up to b1; a factor
    surfaces as a non-invertible denominator (gcd with n). Stage 2 is not
    implemented, so the reach is whatever stage 1 affords for the given b1.
    """
    if n < 2 or n % 2 == 0:
        return 2 if n % 2 == 0 and n > 2 else None
    if primes.is_probable_prime(n, rounds=20):
        return None
    root, exact = primes.iroot(n, 2)
    if exact:
        return root
    rng = rng or random.Random()
    plan = []
    for p in primes.sieve_up_to(b1):
        pk = p
        while pk * p <= b1:
            pk *= p
        plan.append((p, pk))

    for _ in range(curves):
        sigma = rng.randrange(6, n - 1)
        u = (sigma * sigma - 5) % n
        v = 4 * sigma % n
        # a24 = ((v-u)^3 (3u+v)) / (16 u^3 v); a gcd hit here is already a factor
        den = 16 * pow(u, 3, n) * v % n
        g = math.gcd(den, n)
        if g == n:
            continue
        if g > 1:
            return g
        a24 = pow(v - u, 3, n) * (3 * u + v) % n * pow(den, -1, n) % n
        X, Z = pow(u, 3, n), pow(v, 3, n)
        for _, pk in plan:
            X, Z = _mont_ladder(pk, X, Z, a24, n)
            if Z == 0:
                break
        g = math.gcd(Z, n)
        if 1 < g < n:
            return g
    return None
