"""Prime-number utilities: sieve, products, probable-prime testing.

Probable-prime testing is Miller-Rabin with 64 random rounds followed by a
strong Lucas check (Baillie-PSW style), so accepting a composite at corpus
scale is out of the question.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

import gmpy2

# The small-factor scan's boundary convention: the scan set for a count k is
# {2} plus the first k odd primes. This puts the top of the 10^4-prime set at
# 104,743 and the top of the 10^6-prime set at 15,485,867.
_SCAN_INCLUDES_TWO_EXTRA = 1


def sieve_up_to(limit: int) -> list[int]:
    """All primes <= limit via a bytearray Eratosthenes sieve."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def _nth_prime_upper_bound(n: int) -> int:
    if n < 6:
        return 15
    x = n * (math.log(n) + math.log(math.log(n)))
    return int(x * 1.2) + 10


@lru_cache(maxsize=4)
def scan_primes(count: int) -> tuple[int, ...]:
    """The small-factor scan set for a given count: 2 plus `count` odd primes."""
    total = count + _SCAN_INCLUDES_TWO_EXTRA
    bound = _nth_prime_upper_bound(total)
    primes = sieve_up_to(bound)
    while len(primes) < total:
        bound *= 2
        primes = sieve_up_to(bound)
    return tuple(primes[:total])


def prime_product_blocks(primes: list[int] | tuple[int, ...],
                         block_size: int = 1024) -> list[tuple[tuple[int, ...], gmpy2.mpz]]:
    """Split a prime list into blocks paired with their products."""
    blocks = []
    for i in range(0, len(primes), block_size):
        chunk = tuple(primes[i : i + block_size])
        prod = gmpy2.mpz(1)
        for p in chunk:
            prod *= p
        blocks.append((chunk, prod))
    return blocks


def is_probable_prime(n: int, rounds: int = 64, rng: random.Random | None = None) -> bool:
    """Miller-Rabin with random bases plus a strong Lucas test."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = rng or random.Random(0xC0FFEE ^ (n & 0xFFFFFFFF))
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return _strong_lucas(n)


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge's parameter choice."""
    if gmpy2.is_square(n):
        return False
    D = 5
    while _jacobi(D, n) != -1:
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    d = n + 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Lucas sequence by binary ladder on (U, V).
    U, V, k = 1, 1, 1
    Qk = Q % n
    inv2 = pow(2, -1, n)
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (U + V) * inv2 % n, (V + D * U) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def random_prime(bits: int, rng: random.Random, mr_rounds: int = 40) -> int:
    """Random prime of exactly `bits` bits."""
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(candidate, rounds=mr_rounds):
            return candidate


def next_prime(n: int) -> int:
    return int(gmpy2.next_prime(n))


def iroot(n: int, k: int) -> tuple[int, bool]:
    """Integer k-th root of n and whether it is exact."""
    root, exact = gmpy2.iroot(gmpy2.mpz(n), k)
    return int(root), bool(exact)


def perfect_power(n: int) -> tuple[int, int] | None:
    """Return (base, exponent >= 2) when n is a perfect power, else None.

    Exponents are probed over primes up to 64, which covers every modulus
    wide enough to be worth encoding as an SSH key.
    """
    if n < 4:
        return None
    for k in sieve_up_to(64):
        if (1 << (n.bit_length() // k + 1)) < 2:
            break
        root, exact = iroot(n, k)
        if exact and root > 1:
            # Reduce the base as far as possible (e.g. 16 = 2^4, not 4^2).
            inner = perfect_power(root)
            if inner:
                return inner[0], inner[1] * k
            return root, k
    return None
