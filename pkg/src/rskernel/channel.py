"""Transmission models: BPSK/AWGN on the binary image of field symbols,
plus q-ary erasure and symmetric channels for unit tests.

Per-frame randomness comes from numpy's SeedSequence seeded with
(seed, frame_index), so frames are reproducible independently of simulation
order or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

AWGN_BPSK = "awgn-bpsk"
Q_ERASURE = "q-erasure"
Q_SYMMETRIC = "q-symmetric"


@dataclass(frozen=True)
class ChannelModel:
    """kind selects the model; noise is sigma^2, the erasure probability or
    the flip probability accordingly."""

    kind: str
    noise: float
    seed: int = 0

    def __post_init__(self):
        if self.kind not in (AWGN_BPSK, Q_ERASURE, Q_SYMMETRIC):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.kind == AWGN_BPSK:
            if self.noise <= 0:
                raise ValueError("sigma^2 must be positive")
        elif not 0 <= self.noise <= 1:
            raise ValueError("probability parameter must lie in [0, 1]")


def snr_to_sigma2(eb_n0_db: float, rate: float) -> float:
    """Noise variance per BPSK dimension for a given Eb/N0 and code rate."""
    if not 0 < rate <= 1:
        raise ValueError("rate must lie in (0, 1]")
    return 1.0 / (2.0 * rate * 10.0 ** (eb_n0_db / 10.0))


def frame_rng(model: ChannelModel, frame_index: int) -> np.random.Generator:
    return np.random.default_rng((model.seed, frame_index))


def transmit(model: ChannelModel, codeword, m: int, frame_index: int):
    """Send one codeword; the return type depends on the channel kind.

    awgn-bpsk: (n, m) array of noisy antipodal observations, bit b of a
    symbol mapped LSB-first with 0 -> +1 and 1 -> -1.
    q-erasure: (received symbols with erasures zeroed, boolean erasure mask).
    q-symmetric: received symbol array.
    """
    rng = frame_rng(model, frame_index)
    cw = np.asarray(codeword, dtype=np.int64)
    n = cw.shape[0]
    if model.kind == AWGN_BPSK:
        bits = (cw[:, None] >> np.arange(m)[None, :]) & 1
        clean = 1.0 - 2.0 * bits
        return clean + rng.normal(0.0, math.sqrt(model.noise), size=(n, m))
    if model.kind == Q_ERASURE:
        mask = rng.random(n) < model.noise
        received = cw.copy()
        received[mask] = 0
        return received, mask
    flips = rng.random(n) < model.noise
    # Uniform over the q-1 other symbols via a nonzero additive offset.
    offsets = rng.integers(1, 1 << m, size=n)
    received = cw.copy()
    received[flips] ^= offsets[flips]
    return received


def symbol_llrs(model: ChannelModel, observations: np.ndarray) -> np.ndarray:
    """Per-symbol LLR tables from AWGN observations of the binary image.

    Bitwise hard decisions give the zero-cost symbol; the cost of symbol z
    is the sum of |2 y_b / sigma^2| over the bits where z disagrees with the
    hard decision.  Exact for the memoryless bitwise channel.
    """
    if model.kind != AWGN_BPSK:
        raise ValueError("symbol LLR tables are defined for the awgn-bpsk channel")
    obs = np.asarray(observations, dtype=np.float64)
    n, m = obs.shape
    q = 1 << m
    mags = np.abs(2.0 * obs / model.noise)
    hard_bits = (obs < 0).astype(np.int64)
    out = np.zeros((n, q))
    for z in range(q):
        zbits = (z >> np.arange(m)) & 1
        out[:, z] = ((zbits[None, :] != hard_bits) * mags).sum(axis=1)
    return out


def symbol_log_likelihoods(model: ChannelModel, observations: np.ndarray) -> np.ndarray:
    """Unnormalized log W(y|z) tables for the probability-domain decoder."""
    if model.kind != AWGN_BPSK:
        raise ValueError("log-likelihood tables are defined for the awgn-bpsk channel")
    obs = np.asarray(observations, dtype=np.float64)
    n, m = obs.shape
    q = 1 << m
    out = np.zeros((n, q))
    for z in range(q):
        zbits = (z >> np.arange(m)) & 1
        clean = 1.0 - 2.0 * zbits
        out[:, z] = -((obs - clean[None, :]) ** 2).sum(axis=1) / (2.0 * model.noise)
    return out


def hard_symbols(observations: np.ndarray) -> np.ndarray:
    """Bitwise hard-decision symbols from AWGN observations."""
    obs = np.asarray(observations)
    n, m = obs.shape
    bits = (obs < 0).astype(np.int64)
    return (bits << np.arange(m)[None, :]).sum(axis=1)
