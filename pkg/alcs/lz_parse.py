# lz_parse.py
"""
Greedy LZ77 parse: each phrase is the longest prefix of the remaining
text with an earlier occurrence (overlap allowed) plus one explicit
character. A phrase that reaches the end of the text stops there.

All positions in Phrase and Lz77Parse are 1-based and inclusive.
"""
from __future__ import annotations

import bisect
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .suffix_array import build_suffix_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Phrase:
    start: int
    end: int
    source: Optional[int]  # None iff a first-occurrence single character

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class Lz77Parse:
    phrases: Tuple[Phrase, ...]

    @property
    def z(self) -> int:
        return len(self.phrases)

    @property
    def ends(self) -> Tuple[int, ...]:
        return tuple(p.end for p in self.phrases)

    @property
    def n(self) -> int:
        return self.phrases[-1].end if self.phrases else 0


def _match_len(text: bytes, i: int, src: int) -> int:
    n = len(text)
    h = 0
    while i + h < n and text[src + h] == text[i + h]:
        h += 1
    return h


def _nearest_smaller(sa: List[int]) -> Tuple[List[int], List[int]]:
    """
    For every text position p, the text positions of the nearest suffixes
    before / after p in SA order whose start is smaller than p (-1 if none).
    """
    n = len(sa)
    psv = [-1] * n
    nsv = [-1] * n
    stack: List[int] = []
    for pos in sa:
        while stack and stack[-1] > pos:
            nsv[stack.pop()] = pos
        psv[pos] = stack[-1] if stack else -1
        stack.append(pos)
    return psv, nsv


def lz77_parse(text: bytes, sa: Optional[np.ndarray] = None) -> Lz77Parse:
    """
    Parse with the suffix array: the longest earlier match at p is with
    the nearest lexicographic neighbour starting before p on either side.
    Comparison work is bounded by the phrase lengths, so it sums to O(n).
    """
    n = len(text)
    if n == 0:
        return Lz77Parse(phrases=())

    if sa is None:
        sa = build_suffix_array(text)
    psv, nsv = _nearest_smaller(sa.tolist())

    phrases: List[Phrase] = []
    i = 0
    while i < n:
        best_len, best_src = 0, -1
        for cand in (psv[i], nsv[i]):
            if cand < 0:
                continue
            h = _match_len(text, i, cand)
            if h > best_len or (h == best_len and h > 0 and cand < best_src):
                best_len, best_src = h, cand
        phrases.append(_make_phrase(i, best_len, best_src, n))
        i = phrases[-1].end

    logger.debug("lz77 parse: n=%d z=%d", n, len(phrases))
    return Lz77Parse(phrases=tuple(phrases))


def _make_phrase(i: int, match: int, src: int, n: int) -> Phrase:
    # i is 0-based here; Phrase is 1-based
    if match == 0:
        return Phrase(start=i + 1, end=i + 1, source=None)
    if i + match >= n:
        return Phrase(start=i + 1, end=n, source=src + 1)
    return Phrase(start=i + 1, end=i + match + 1, source=src + 1)


def lz77_parse_naive(text: bytes) -> Lz77Parse:
    """Reference parser: tries every earlier start. O(n^2) comparisons per phrase."""
    n = len(text)
    phrases: List[Phrase] = []
    i = 0
    while i < n:
        best_len, best_src = 0, -1
        for src in range(i):
            h = _match_len(text, i, src)
            if h > best_len:
                best_len, best_src = h, src
        phrases.append(_make_phrase(i, best_len, best_src, n))
        i = phrases[-1].end
    return Lz77Parse(phrases=tuple(phrases))


def leftmost_occurrence(text: bytes, sub: bytes) -> Optional[Tuple[int, int]]:
    """1-based inclusive span of the first occurrence of a non-empty ``sub``."""
    pos = text.find(sub)
    if pos < 0 or not sub:
        return None
    return pos + 1, pos + len(sub)


def first_occurrence_touches_boundary(
    parse: Lz77Parse, text: bytes, span: Tuple[int, int]
) -> bool:
    """
    True iff some phrase end e satisfies start <= e <= end, i.e. the
    boundary after e splits text[start..end] into a non-empty prefix and
    a possibly empty suffix. Holds for every leftmost occurrence.
    """
    start, end = span
    ends = parse.ends
    k = bisect.bisect_left(ends, start)
    return k < len(ends) and ends[k] <= end
