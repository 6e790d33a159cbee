"""BPSK over AWGN and conversion of samples to log-domain channel metrics.

Metric pairs are arrays with a trailing axis of size 2 holding
(log P(y|bit=0), log P(y|bit=1)) up to a shared additive constant; decoder
decisions are invariant under adding any constant to both entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelConfig:
    """AWGN channel operating point: Eb/N0 in dB, payload code rate, seed.

    Worker RNG streams are derived with numpy SeedSequence spawning, which
    guarantees independent non-overlapping streams per (seed, worker index).
    """

    ebn0_db: float
    code_rate: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.code_rate <= 1.0:
            raise ValueError(f"code_rate must be in (0, 1], got {self.code_rate}")

    @property
    def sigma2(self):
        return noise_sigma2(self.ebn0_db, self.code_rate)


def noise_sigma2(ebn0_db, code_rate):
    """Per-sample noise variance for unit-energy BPSK at the given Eb/N0."""
    if math.isinf(ebn0_db) and ebn0_db > 0:
        return 0.0
    return 1.0 / (2.0 * code_rate * 10.0 ** (ebn0_db / 10.0))


def modulate(bits):
    """Map bits to antipodal symbols: 0 -> +1.0, 1 -> -1.0."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def transmit(symbols, cfg, rng):
    """Add white Gaussian noise drawn from `rng` at the config's variance."""
    symbols = np.asarray(symbols, dtype=np.float64)
    sigma2 = cfg.sigma2
    if sigma2 == 0.0:
        return symbols.copy()
    return symbols + rng.normal(0.0, math.sqrt(sigma2), size=symbols.shape)


def initial_metrics(y, sigma2):
    """Channel-stage metric pairs: ll_b = -(y - s_b)^2 / (2 sigma^2).

    The Gaussian normalization constant is dropped (shared by both entries).
    Returns an array of shape y.shape + (2,).
    """
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    y = np.asarray(y, dtype=np.float64)
    out = np.empty(y.shape + (2,))
    out[..., 0] = -((y - 1.0) ** 2) / (2.0 * sigma2)
    out[..., 1] = -((y + 1.0) ** 2) / (2.0 * sigma2)
    return out
