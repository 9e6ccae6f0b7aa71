"""Chain outcomes as integers and bitstreams, with statistical validation.

Bit-significance convention: dyad 0 (leftmost in the chain) is the most
significant bit. Packed exports place the most significant bit first within
each byte and zero-pad the final byte.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import special, stats

from .dynamics import NoiseSpec, TrialKind, run_trial
from .errors import ConfigurationError, LowYieldError, TooFewSamplesError
from .model import NetworkConfig
from .topology import chain_dyads


@dataclass(frozen=True)
class ChainSample:
    """One resolved chain outcome: per-dyad bits and their integer value."""

    bits: tuple[int, ...]
    value: int
    seed: int


@dataclass(frozen=True)
class TestReport:
    name: str
    statistic: float
    p_value: float
    passed: bool


SIGNIFICANCE = 0.01


def encode(bits: Sequence[int]) -> int:
    """Integer value of a bit vector, dyad 0 most significant."""
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise ConfigurationError(f"bits must be binary, got {b}")
        value = (value << 1) | b
    return value


def decode(value: int, n: int) -> tuple[int, ...]:
    """Inverse of encode for an n-bit chain."""
    if value < 0 or value >= (1 << n):
        raise ConfigurationError(f"value {value} does not fit in {n} bits")
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


def generate_stream(config: NetworkConfig, n_samples: int, base_seed: int,
                    noise: Optional[NoiseSpec] = None,
                    max_yield_loss: float = 0.10) -> list[ChainSample]:
    """Fresh noise-seeded trials of a chain until n_samples resolve.

    Unresolved and non-stationary trials are skipped but counted; more than
    max_yield_loss of them aborts with LowYieldError (bad parameter choice).
    """
    if config.n % 2 != 0:
        raise ConfigurationError("chain configs need an even site count")
    n_dyads = config.n // 2
    dyads = chain_dyads(n_dyads)
    noise = noise or NoiseSpec()
    samples: list[ChainSample] = []
    skipped = 0
    seed = base_seed
    while len(samples) < n_samples:
        out = run_trial(config, dyads, noise, seed=seed)
        if out.kind is TrialKind.STEADY and out.bits is not None:
            samples.append(ChainSample(bits=out.bits, value=encode(out.bits),
                                       seed=seed))
        else:
            skipped += 1
            attempted = len(samples) + skipped
            if attempted >= 50 and skipped > max_yield_loss * attempted:
                raise LowYieldError(
                    f"{skipped}/{attempted} trials unresolved or non-stationary")
        seed += 1
    return samples


def pack_bits(samples: Sequence[ChainSample]) -> bytes:
    """Concatenated sample bits packed MSB-first, zero-padded final byte."""
    flat = np.concatenate([np.asarray(s.bits, dtype=np.uint8) for s in samples])
    return np.packbits(flat).tobytes()


def _monobit(bits: np.ndarray) -> TestReport:
    n = bits.size
    s = np.sum(2 * bits.astype(int) - 1)
    statistic = abs(s) / np.sqrt(n)
    p = float(special.erfc(statistic / np.sqrt(2.0)))
    return TestReport("monobit", float(statistic), p, p >= SIGNIFICANCE)


def _runs(bits: np.ndarray, name: str) -> TestReport:
    n = bits.size
    pi = float(np.mean(bits))
    # runs statistic is meaningless when the frequency test already fails
    if abs(pi - 0.5) >= 2.0 / np.sqrt(n):
        return TestReport(name, float("inf"), 0.0, False)
    v = 1 + int(np.sum(bits[1:] != bits[:-1]))
    num = abs(v - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * np.sqrt(2.0 * n) * pi * (1.0 - pi)
    p = float(special.erfc(num / den))
    return TestReport(name, float(v), p, p >= SIGNIFICANCE)


def _chi_square_uniformity(values: np.ndarray, n_states: int) -> TestReport:
    counts = np.bincount(values, minlength=n_states)
    expected = values.size / n_states
    if expected < 5.0:
        raise TooFewSamplesError(
            f"chi-square needs expected counts >= 5; have {expected:.2f} "
            f"per state over {n_states} states")
    statistic, p = stats.chisquare(counts)
    return TestReport("chi_square_uniformity", float(statistic), float(p),
                      p >= SIGNIFICANCE)


def test_suite(samples: Sequence[ChainSample]) -> list[TestReport]:
    """Monobit over the pooled bits, a runs test per bit position across
    samples, and chi-square uniformity over the 2^n state histogram."""
    if len(samples) < 100:
        raise TooFewSamplesError("need >= 100 samples")
    n_dyads = len(samples[0].bits)
    bit_matrix = np.array([s.bits for s in samples], dtype=np.uint8)
    values = np.array([s.value for s in samples])
    reports = [_monobit(bit_matrix.ravel())]
    for k in range(n_dyads):
        reports.append(_runs(bit_matrix[:, k], f"runs[dyad {k}]"))
    reports.append(_chi_square_uniformity(values, 1 << n_dyads))
    return reports


def mutual_information_bits(samples: Sequence[ChainSample], i: int,
                            j: int) -> float:
    """Empirical mutual information (bits) between two dyads' outcomes."""
    xi = np.array([s.bits[i] for s in samples])
    xj = np.array([s.bits[j] for s in samples])
    n = xi.size
    mi = 0.0
    for a in (0, 1):
        pa = np.mean(xi == a)
        for b in (0, 1):
            pb = np.mean(xj == b)
            pab = np.mean((xi == a) & (xj == b))
            if pab > 0 and pa > 0 and pb > 0:
                mi += pab * np.log2(pab / (pa * pb))
    return float(mi)
