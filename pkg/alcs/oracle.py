# oracle.py
"""
Exact ground truth for tests and `alcs oracle`.

exact_lcs is the textbook dynamic program with rolling rows, vectorised
along the shorter string. brute_candidates enumerates, by plain string
comparison against the phrase boundaries of T, every candidate split the
fingerprint/grid pipeline could report.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Set, Tuple

import numpy as np

from .index_builder import length_set
from .lz_parse import lz77_parse

Span = Tuple[int, int]


@dataclass(frozen=True)
class LcsAnswer:
    length: int
    p_span: Span  # 1-based inclusive; (1, 0) when length == 0
    t_span: Span


EMPTY_LCS = LcsAnswer(length=0, p_span=(1, 0), t_span=(1, 0))


def exact_lcs(pattern: bytes, text: bytes) -> LcsAnswer:
    """
    A longest common substring; among those, smallest p_start, then
    smallest t_start.
    """
    m, n = len(pattern), len(text)
    if m == 0 or n == 0:
        return EMPTY_LCS

    # rows run over the shorter string
    p_is_row = m <= n
    row_s = np.frombuffer(pattern if p_is_row else text, dtype=np.uint8)
    col_s = pattern if not p_is_row else text
    width = len(row_s)

    prev = np.zeros(width + 1, dtype=np.int64)
    best_len = 0
    best_key: Tuple[int, int] = (0, 0)
    for c, ch in enumerate(col_s, start=1):
        cur = np.zeros(width + 1, dtype=np.int64)
        match = row_s == ch
        cur[1:] = np.where(match, prev[:-1] + 1, 0)
        top = int(cur.max())
        if top > 0 and top >= best_len:
            for r in np.flatnonzero(cur == top).tolist():
                # cell (r, c) ends a common substring of length top
                if p_is_row:
                    key = (r - top + 1, c - top + 1)
                else:
                    key = (c - top + 1, r - top + 1)
                if top > best_len or key < best_key:
                    best_len, best_key = top, key
        prev = cur

    p_start, t_start = best_key
    return LcsAnswer(
        length=best_len,
        p_span=(p_start, p_start + best_len - 1),
        t_span=(t_start, t_start + best_len - 1),
    )


def brute_lcs(pattern: bytes, text: bytes) -> int:
    """Length only, by trying every substring of the pattern. O(m^2 n)."""
    best = 0
    m = len(pattern)
    for i in range(m):
        for k in range(i + best + 1, m + 1):
            if pattern[i:k] in text:
                best = k - i
            else:
                break
    return best


def brute_candidates(
    text: bytes,
    epsilon: float,
    pattern: bytes,
    max_pattern_len: Optional[int] = None,
) -> Set[Tuple[int, int, int]]:
    """
    Every (i, j, k), 1-based, such that some phrase end e of T has
    T[e-(j-i)..e] = P[i..j] and T[e+1..e+(k-j)] = P[j+1..k], with
    j-i+1 in the length set and k-j in the length set or 0.
    """
    n, m = len(text), len(pattern)
    if n == 0 or m == 0:
        return set()
    ends = lz77_parse(text).ends
    max_len = n if max_pattern_len is None else min(n, max_pattern_len)
    lengths = length_set(epsilon, max_len).lengths
    rights = (0,) + lengths

    found: Set[Tuple[int, int, int]] = set()
    for j in range(1, m + 1):
        for len_l in lengths:
            if len_l > j:
                break
            i = j - len_l + 1
            left = pattern[i - 1:j]
            anchors = [e for e in ends if e >= len_l and text[e - len_l:e] == left]
            if not anchors:
                continue
            for len_r in rights:
                if len_r > m - j:
                    break
                right = pattern[j:j + len_r]
                if any(e + len_r <= n and text[e:e + len_r] == right for e in anchors):
                    found.add((i, j, j + len_r))
    return found
