"""Batch GCD over RSA moduli via product and remainder trees.

For moduli N_1..N_m, computes gcd(N_i, prod_{j!=i} N_j) for every i using
one product tree and one remainder tree (remainders taken mod N_i^2), which
is quasilinear instead of the quadratic all-pairs scan. The corpus is held
as a forest of complete product subtrees so new keys can be appended and
single keys tested without rebuilding everything; subtrees persist to disk
as hex dumps.

A gcd equal to the whole modulus (duplicate keys, or several distinct
shared primes) is degenerate: a pairwise pass over the small colliding
subset then separates the individual factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import gmpy2

from .. import primes


class GcdClass(str, Enum):
    TRIVIAL = "trivial"
    SHARED_PRIME = "shared-prime"
    SMALL_FACTOR_COMPOSITE = "composite-gcd"
    DEGENERATE_WHOLE_MODULUS = "degenerate-whole-modulus"


@dataclass
class GcdResult:
    index: int
    modulus: int
    gcd: int
    classification: GcdClass
    factors: tuple[int, ...] = ()  # resolved prime factors of the gcd
    unresolved: int = 1            # composite cofactor the resolver gave up on
    note: str = ""

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "gcd": hex(self.gcd),
            "classification": self.classification.value,
            "factors": [hex(f) for f in self.factors],
            "unresolved": hex(self.unresolved),
            "note": self.note,
        }


def _resolve_gcd_factors(g: int) -> tuple[tuple[int, ...], int]:
    """Split a composite gcd into prime parts by trial division.

    Composite gcds in the wild are byproducts of corrupted moduli and are
    overwhelmingly smooth; anything a million-prime trial pass cannot finish
    is returned as an unresolved cofactor rather than guessed at.
    """
    if g < 2:
        return (), 1
    if primes.is_probable_prime(g):
        return (g,), 1
    found = []
    rest = g
    for p in primes.scan_primes(10**6):
        if p * p > rest:
            break
        while rest % p == 0:
            found.append(p)
            rest //= p
        if rest == 1:
            break
    if rest > 1:
        if primes.is_probable_prime(rest):
            found.append(rest)
            rest = 1
    return tuple(sorted(set(found))), rest


class _ProductTree:
    """Complete product tree over a chunk of moduli; levels[0] = leaves."""

    def __init__(self, leaves: list[gmpy2.mpz]):
        self.levels: list[list[gmpy2.mpz]] = [list(leaves)]
        while len(self.levels[-1]) > 1:
            prev = self.levels[-1]
            self.levels.append([
                prev[i] * prev[i + 1] if i + 1 < len(prev) else prev[i]
                for i in range(0, len(prev), 2)
            ])

    @property
    def root(self) -> gmpy2.mpz:
        return self.levels[-1][0]

    @property
    def size(self) -> int:
        return len(self.levels[0])

    def remainders(self, top: gmpy2.mpz) -> list[gmpy2.mpz]:
        """Descend `top` down the tree, reducing mod node^2 at every step."""
        current = [top % (self.root * self.root)]
        for level in reversed(self.levels[:-1]):
            nxt = []
            for i, node in enumerate(level):
                nxt.append(current[i // 2] % (node * node))
            current = nxt
        return current


class BatchGcdForest:
    """Append-friendly batch GCD state: a forest of product subtrees."""

    def __init__(self, moduli: list[int] | None = None):
        self._trees: list[_ProductTree] = []
        self._count = 0
        if moduli:
            self.extend(moduli)

    def __len__(self) -> int:
        return self._count

    @property
    def moduli(self) -> list[int]:
        return [int(m) for tree in self._trees for m in tree.levels[0]]

    def add(self, modulus: int) -> None:
        self.extend([modulus])

    def extend(self, moduli: list[int]) -> None:
        if any(m < 2 for m in moduli):
            raise ValueError("moduli must be >= 2")
        self._trees.append(_ProductTree([gmpy2.mpz(m) for m in moduli]))
        self._count += len(moduli)
        self._compact()

    def _compact(self) -> None:
        # binary-counter merge keeps the forest at O(log n) subtrees
        while len(self._trees) > 1 and self._trees[-1].size >= self._trees[-2].size:
            right = self._trees.pop()
            left = self._trees.pop()
            self._trees.append(_ProductTree(left.levels[0] + right.levels[0]))

    def total_product_mod(self, m: gmpy2.mpz) -> gmpy2.mpz:
        acc = gmpy2.mpz(1)
        for tree in self._trees:
            acc = acc * (tree.root % m) % m
        return acc

    def query(self, n: int) -> int:
        """gcd of n with the corpus product, excluding one occurrence of n.

        Works for members and non-members alike: the corpus product is
        reduced mod n^2, and an exact division by n signals membership.
        """
        m = gmpy2.mpz(n)
        r = self.total_product_mod(m * m)
        if r % m == 0:
            return int(gmpy2.gcd(m, r // m))
        return int(gmpy2.gcd(m, r))

    def run(self) -> list[GcdResult]:
        """Full batch: gcd(N_i, prod of all other moduli) for every key."""
        results: list[GcdResult] = []
        if not self._trees:
            return results
        roots = [tree.root for tree in self._trees]
        offset = 0
        for ti, tree in enumerate(self._trees):
            # fold the other subtrees' product in, reduced early to stay small
            top_sq = tree.root * tree.root
            other = gmpy2.mpz(1)
            for tj, root in enumerate(roots):
                if tj != ti:
                    other = other * (root % top_sq) % top_sq
            rems = tree.remainders(tree.root * other)
            for li, (leaf, rem) in enumerate(zip(tree.levels[0], rems)):
                g = int(gmpy2.gcd(leaf, rem // leaf))
                results.append(self._classify(offset + li, int(leaf), g))
            offset += tree.size
        self._pairwise_fallback(results)
        return results

    @staticmethod
    def _classify(index: int, modulus: int, g: int) -> GcdResult:
        if g == 1:
            return GcdResult(index, modulus, 1, GcdClass.TRIVIAL)
        if g == modulus:
            return GcdResult(index, modulus, g, GcdClass.DEGENERATE_WHOLE_MODULUS)
        if primes.is_probable_prime(g):
            return GcdResult(index, modulus, g, GcdClass.SHARED_PRIME, factors=(g,))
        factors, unresolved = _resolve_gcd_factors(g)
        return GcdResult(index, modulus, g, GcdClass.SMALL_FACTOR_COMPOSITE,
                         factors=factors, unresolved=unresolved)

    def _pairwise_fallback(self, results: list[GcdResult]) -> None:
        """Recover per-key factors for degenerate entries via pairwise GCDs.

        Only keys that collided at all (gcd > 1) participate, so the
        quadratic pass runs over a tiny subset of the corpus.
        """
        colliding = [r for r in results if r.gcd > 1]
        degenerate = [r for r in results if
                      r.classification is GcdClass.DEGENERATE_WHOLE_MODULUS]
        for res in degenerate:
            factors: set[int] = set()
            duplicate = False
            for other in colliding:
                if other.index == res.index:
                    continue
                g = int(gmpy2.gcd(res.modulus, other.modulus))
                if g == res.modulus:
                    duplicate = True
                    continue
                if g > 1:
                    parts, _ = _resolve_gcd_factors(g)
                    factors.update(parts)
            res.factors = tuple(sorted(factors))
            if duplicate:
                res.note = "duplicate"

    # -- persistence --------------------------------------------------------

    def save(self, directory) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        manifest = {"subtrees": len(self._trees), "count": self._count}
        (directory / "forest.json").write_text(json.dumps(manifest))
        for i, tree in enumerate(self._trees):
            with open(directory / f"subtree-{i:04d}.jsonl", "w") as fp:
                for level in tree.levels:
                    fp.write(json.dumps([m.digits(16) for m in level]) + "\n")

    @classmethod
    def load(cls, directory) -> "BatchGcdForest":
        directory = Path(directory)
        manifest = json.loads((directory / "forest.json").read_text())
        forest = cls()
        for i in range(manifest["subtrees"]):
            with open(directory / f"subtree-{i:04d}.jsonl") as fp:
                levels = [[gmpy2.mpz(m, 16) for m in json.loads(line)] for line in fp]
            tree = _ProductTree.__new__(_ProductTree)
            tree.levels = levels
            forest._trees.append(tree)
            forest._count += tree.size
        return forest


def batch_gcd(moduli: list[int]) -> list[GcdResult]:
    """One-shot batch GCD over a list of moduli."""
    return BatchGcdForest(moduli).run()
