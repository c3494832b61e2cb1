# corpus.py
"""
Seeded generators for repetitive corpora and benchmark pattern sets.

generate() draws a base string over the alphabet and writes it `repeats`
times; every byte of every copy is independently replaced, with
probability mut_rate, by a uniformly drawn alphabet symbol (which may
equal the original).
"""
from __future__ import annotations

import logging
from typing import List

import numpy as np

from .errors import ParameterError

logger = logging.getLogger(__name__)


def _alphabet_array(alphabet: bytes) -> np.ndarray:
    symbols = np.unique(np.frombuffer(bytes(alphabet), dtype=np.uint8))
    if len(symbols) == 0:
        raise ParameterError("alphabet must not be empty")
    return symbols


def _mutate(rng: np.random.Generator, data: np.ndarray, mut_rate: float, symbols: np.ndarray) -> np.ndarray:
    if mut_rate <= 0.0 or len(data) == 0:
        return data
    hits = rng.random(len(data)) < mut_rate
    out = data.copy()
    out[hits] = rng.choice(symbols, size=int(hits.sum()))
    return out


def generate(
    base_len: int,
    repeats: int,
    mut_rate: float,
    seed: int,
    alphabet: bytes = b"ACGT",
) -> bytes:
    if base_len < 1 or repeats < 1:
        raise ParameterError(f"base_len and repeats must be >= 1, got {base_len}, {repeats}")
    if not 0.0 <= mut_rate <= 1.0:
        raise ParameterError(f"mut_rate must be in [0, 1], got {mut_rate}")
    if seed < 0:
        raise ParameterError(f"seed must be >= 0, got {seed}")
    symbols = _alphabet_array(alphabet)
    rng = np.random.default_rng(seed)
    base = rng.choice(symbols, size=base_len)
    copies = [_mutate(rng, base, mut_rate, symbols) for _ in range(repeats)]
    corpus = np.concatenate(copies).astype(np.uint8).tobytes()
    logger.info("generated corpus: %d bytes (%d x %d, mut %.4g)", len(corpus), repeats, base_len, mut_rate)
    return corpus


def sample_patterns(
    text: bytes,
    count: int,
    length: int,
    mut_rate: float,
    seed: int,
) -> List[bytes]:
    """
    Substrings of the text at random offsets, mutated like corpus copies
    so their longest common substring with the text is usually shorter
    than the pattern.
    """
    if count < 0 or length < 1:
        raise ParameterError(f"count must be >= 0 and length >= 1, got {count}, {length}")
    if not text:
        return [b""] * count
    rng = np.random.default_rng(seed)
    data = np.frombuffer(text, dtype=np.uint8)
    symbols = np.unique(data)
    span = min(length, len(data))
    patterns: List[bytes] = []
    for _ in range(count):
        start = int(rng.integers(0, len(data) - span + 1))
        piece = _mutate(rng, data[start:start + span], mut_rate, symbols)
        patterns.append(piece.astype(np.uint8).tobytes())
    return patterns
