# kr_fingerprint.py
"""
Karp-Rabin fingerprints over byte strings.

    fp(s) = (s[1]·b^{|s|-1} + s[2]·b^{|s|-2} + ... + s[|s|]) mod p

with p the Mersenne prime 2^61 - 1 and the base b drawn from a seed.
A PrefixFpTable holds the fingerprints of every prefix and the powers of
b, so any substring's fingerprint is available in constant time.
"""
from __future__ import annotations

import random
import secrets
from dataclasses import dataclass
from typing import List, Optional

from .errors import ParameterError

MODULUS = (1 << 61) - 1
SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class KrParams:
    base: int
    seed: int = 0
    modulus: int = MODULUS

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ParameterError(f"modulus must be >= 2, got {self.modulus}")
        if not 0 < self.base < self.modulus:
            raise ParameterError(f"base {self.base} outside (0, {self.modulus})")


def new_seed() -> int:
    return secrets.randbits(64)


def draw_params(seed: Optional[int] = None, attempt: int = 0) -> KrParams:
    """
    Draw a base uniformly from [2, MODULUS - 2].

    The same (seed, attempt) always yields the same base; build uses
    attempt > 0 to re-draw after a fingerprint collision.
    """
    if seed is None:
        seed = new_seed()
    if not 0 <= seed < SEED_LIMIT:
        raise ParameterError(f"seed must be in [0, 2^64), got {seed}")
    if attempt < 0:
        raise ParameterError(f"attempt must be >= 0, got {attempt}")
    rng = random.Random(seed)
    base = 0
    for _ in range(attempt + 1):
        base = rng.randint(2, MODULUS - 2)
    return KrParams(base=base, seed=seed)


def fp_of(s: bytes, params: KrParams) -> int:
    b, p = params.base, params.modulus
    acc = 0
    for ch in s:
        acc = (acc * b + ch) % p
    return acc


@dataclass(frozen=True)
class PrefixFpTable:
    params: KrParams
    prefix_fps: List[int]
    power_table: List[int]

    @property
    def n(self) -> int:
        return len(self.prefix_fps) - 1


def build_prefix_table(s: bytes, params: KrParams) -> PrefixFpTable:
    b, p = params.base, params.modulus
    prefix = [0] * (len(s) + 1)
    powers = [1] * (len(s) + 1)
    acc = 0
    pw = 1
    for t, ch in enumerate(s, start=1):
        acc = (acc * b + ch) % p
        pw = (pw * b) % p
        prefix[t] = acc
        powers[t] = pw
    return PrefixFpTable(params=params, prefix_fps=prefix, power_table=powers)


def substring_fp(table: PrefixFpTable, i: int, j: int) -> int:
    """Fingerprint of S[i..j], 1-based inclusive; i = j + 1 is the empty string."""
    if i < 1 or j > table.n or i > j + 1:
        raise ParameterError(f"substring [{i}..{j}] outside [1..{table.n}]")
    fps = table.prefix_fps
    return (fps[j] - fps[i - 1] * table.power_table[j - i + 1]) % table.params.modulus
