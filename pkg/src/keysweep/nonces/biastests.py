"""Statistical bias tests on recovered or simulated nonces.

Two complementary tests: a per-bit Z-test that catches any single stuck or
skewed bit, and a Rayleigh test on the unit-circle embedding exp(2*pi*i*k/q)
that catches multi-bit range bias a single bit position would miss. Both
default to a significance level of 2^-32 so that sweeps over thousands of
implementations produce no false positives.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

DEFAULT_ALPHA = 2.0**-32


class TooFewSamplesError(ValueError):
    pass


class Provenance(str, Enum):
    RECOVERED = "recovered"
    SIMULATED = "simulated"


@dataclass
class NonceSampleSet:
    """Nonces modulo a common group order, ready for bias analysis."""

    q: int
    nonces: list[int]
    provenance: Provenance = Provenance.SIMULATED

    def __post_init__(self):
        if any(not 1 <= k < self.q for k in self.nonces):
            raise ValueError("every nonce must lie in [1, q)")

    def dump(self, fp) -> None:
        """JSON-lines export: a header line with q, then one hex nonce per line."""
        fp.write(json.dumps({"q": hex(self.q), "provenance": self.provenance.value}) + "\n")
        for k in self.nonces:
            fp.write(json.dumps({"k": hex(k)}) + "\n")

    @classmethod
    def load(cls, fp) -> "NonceSampleSet":
        header = json.loads(fp.readline())
        nonces = [int(json.loads(line)["k"], 16) for line in fp if line.strip()]
        return cls(q=int(header["q"], 16), nonces=nonces,
                   provenance=Provenance(header.get("provenance", "recovered")))


def _bit_count_matrix(nonces: list[int], bits: int) -> np.ndarray:
    """ones[j] = number of nonces with bit j set (j = 0 is the LSB)."""
    width = (bits + 7) // 8
    buf = b"".join(k.to_bytes(width, "big") for k in nonces)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(len(nonces), width)
    cols = np.unpackbits(arr, axis=1).sum(axis=0, dtype=np.int64)
    # unpackbits yields MSB-first columns; flip to LSB-first bit indices
    return cols[::-1][:bits]


def exact_bit_probability(q: int, j: int) -> float:
    """P(bit j set) for an integer uniform on [1, q)."""
    period = 1 << (j + 1)
    ones = (q >> (j + 1)) << j
    ones += max(0, (q & (period - 1)) - (1 << j))
    return ones / (q - 1)


@dataclass
class BitBiasReport:
    bits: int
    sample_count: int
    alpha: float
    z_scores: list[float]
    p_values: list[float]
    flagged_bits: list[int]
    degenerate_bits: list[int] = field(default_factory=list)

    @property
    def biased(self) -> bool:
        return bool(self.flagged_bits)

    def to_json(self) -> dict:
        return {
            "test": "zbit",
            "bits": self.bits,
            "samples": self.sample_count,
            "alpha": self.alpha,
            "flagged_bits": self.flagged_bits,
            "degenerate_bits": self.degenerate_bits,
            "max_abs_z": max((abs(z) for z in self.z_scores), default=0.0),
        }


def zbit_test(samples: NonceSampleSet, alpha: float = DEFAULT_ALPHA) -> BitBiasReport:
    """Single-bit Z-test over every bit position of the group order.

    The expected one-probability per bit is computed exactly from uniformity
    on [1, q), not assumed 1/2; positions are Bonferroni-corrected, so the
    whole report has false-positive probability at most alpha.
    """
    if len(samples.nonces) < 2:
        raise TooFewSamplesError("need at least 2 nonces")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    q = samples.q
    bits = q.bit_length()
    n = len(samples.nonces)
    ones = _bit_count_matrix(samples.nonces, bits)
    threshold = alpha / bits

    z_scores: list[float] = []
    p_values: list[float] = []
    flagged: list[int] = []
    degenerate: list[int] = []
    for j in range(bits):
        p = exact_bit_probability(q, j)
        var = n * p * (1.0 - p)
        if var == 0.0:
            degenerate.append(j)
            z_scores.append(0.0)
            p_values.append(1.0)
            continue
        z = (float(ones[j]) - n * p) / math.sqrt(var)
        pv = math.erfc(abs(z) / math.sqrt(2.0))
        z_scores.append(z)
        p_values.append(pv)
        if pv < threshold:
            flagged.append(j)
    return BitBiasReport(bits=bits, sample_count=n, alpha=alpha,
                         z_scores=z_scores, p_values=p_values,
                         flagged_bits=flagged, degenerate_bits=degenerate)


@dataclass
class RayleighReport:
    sample_count: int
    alpha: float
    magnitude: float  # |mean of exp(2*pi*i*k/q)|
    p_value: float
    log2_p: float
    biased: bool
    frequency: int = 1

    def to_json(self) -> dict:
        return {
            "test": "rayleigh",
            "samples": self.sample_count,
            "alpha": self.alpha,
            "frequency": self.frequency,
            "magnitude": self.magnitude,
            "p_value": self.p_value,
            "log2_p": self.log2_p,
            "biased": self.biased,
        }


def _fractions_of_q(nonces: list[int], q: int) -> np.ndarray:
    """k/q per nonce as float64, via the top 64 bits (plenty for angles)."""
    bits = q.bit_length()
    shift = max(0, bits - 64)
    tops = np.fromiter((k >> shift for k in nonces), dtype=np.float64,
                       count=len(nonces))
    return tops / float(q >> shift if shift else q)


def rayleigh_test(samples: NonceSampleSet, alpha: float = DEFAULT_ALPHA,
                  frequency: int = 1) -> RayleighReport:
    """Rayleigh test for clustering of nonces on an arc of [0, q).

    Computes Z = mean(exp(2*pi*i*f*k/q)); under uniformity N*|Z|^2 follows an
    exponential distribution, so the p-value is exp(-N*|Z|^2). A frequency f
    above 1 probes periodic structure with period q/f.
    """
    n = len(samples.nonces)
    if n < 100:
        raise TooFewSamplesError("need at least 100 nonces")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    angles = 2.0 * np.pi * frequency * _fractions_of_q(samples.nonces, samples.q)
    zr = float(np.cos(angles).mean())
    zi = float(np.sin(angles).mean())
    mag_sq = zr * zr + zi * zi
    stat = n * mag_sq
    p_value = math.exp(-stat) if stat < 700 else 0.0
    log2_p = -stat / math.log(2.0)
    return RayleighReport(sample_count=n, alpha=alpha,
                          magnitude=math.sqrt(mag_sq), p_value=p_value,
                          log2_p=log2_p, biased=(stat > -math.log(alpha)),
                          frequency=frequency)
