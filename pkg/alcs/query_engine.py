# query_engine.py
"""
Approximate longest-common-substring queries.

A candidate (i, j, k) splits P[i..k] at j: the left part P[i..j] must be
a length-set suffix of some phrase-end prefix (map_left), the right part
P[j+1..k] a length-set prefix of the following boundary suffix
(map_right), and the grid must hold a point in the product of the two
rank ranges. A hit means P[i..k] occurs in T.

query_naive tries every (j, len_L, len_R). query_pruned keeps the best
length ell and only tries candidates that can beat it, in two passes per
j (left part at least as long as the right part, then the reverse); both
return the same length.
"""
from __future__ import annotations

import bisect
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

from .index_builder import AlcsIndex
from .kr_fingerprint import PrefixFpTable, build_prefix_table, substring_fp
from .range_grid import report_any

logger = logging.getLogger(__name__)


class Algo(str, Enum):
    NAIVE = "naive"
    PRUNED = "pruned"


@dataclass(frozen=True)
class QueryResult:
    p_start: int
    p_end: int
    length: int
    t_pos: Optional[int]

    @property
    def is_empty(self) -> bool:
        return self.length == 0


EMPTY_RESULT = QueryResult(p_start=1, p_end=0, length=0, t_pos=None)


@dataclass
class QueryStats:
    lookups: int = 0
    grid_checks: int = 0
    ell_trace: List[int] = field(default_factory=list)


@dataclass
class MatchState:
    ell: int = 0
    best: QueryResult = EMPTY_RESULT
    best_right: int = 0

    def offer(self, i: int, j: int, k: int, t_pos: int, stats: QueryStats) -> None:
        """Keep (i..k) if longer, or equally long with smaller p_start / right length."""
        length = k - i + 1
        right = k - j
        if length < self.ell:
            return
        if length == self.ell and self.ell > 0:
            if (i, right) >= (self.best.p_start, self.best_right):
                return
        self.ell = length
        self.best = QueryResult(p_start=i, p_end=k, length=length, t_pos=t_pos)
        self.best_right = right
        stats.ell_trace.append(length)


def candidate_check(
    index: AlcsIndex,
    table: PrefixFpTable,
    i: int,
    j: int,
    k: int,
    stats: Optional[QueryStats] = None,
) -> Optional[int]:
    """1-based start of an occurrence of P[i..k] in T, or None."""
    if stats is None:
        stats = QueryStats()
    stats.lookups += 1
    x_lo, x_hi = index.map_left.lookup(j - i + 1, substring_fp(table, i, j))
    if x_lo > x_hi:
        return None
    stats.lookups += 1
    y_lo, y_hi = index.map_right.lookup(k - j, substring_fp(table, j + 1, k))
    if y_lo > y_hi:
        return None
    stats.grid_checks += 1
    point = report_any(index.grid, x_lo, x_hi, y_lo, y_hi)
    if point is None:
        return None
    return point[2] - (j - i + 1) + 1


def _pattern_table(index: AlcsIndex, pattern: bytes) -> PrefixFpTable:
    return build_prefix_table(pattern, index.kr)


def query_naive(index: AlcsIndex, pattern: bytes, stats: Optional[QueryStats] = None) -> QueryResult:
    if stats is None:
        stats = QueryStats()
    m = len(pattern)
    if m == 0 or index.z == 0:
        return EMPTY_RESULT
    table = _pattern_table(index, pattern)
    lengths = index.lengths.lengths
    rights = (0,) + lengths
    state = MatchState()

    for j in range(1, m + 1):
        for len_l in lengths:
            if len_l > j:
                break
            i = j - len_l + 1
            stats.lookups += 1
            x_lo, x_hi = index.map_left.lookup(len_l, substring_fp(table, i, j))
            if x_lo > x_hi:
                continue
            for len_r in rights:
                if len_r > m - j:
                    break
                k = j + len_r
                occ = candidate_check(index, table, i, j, k, stats)
                if occ is not None:
                    state.offer(i, j, k, occ, stats)
    return state.best


def query_pruned(index: AlcsIndex, pattern: bytes, stats: Optional[QueryStats] = None) -> QueryResult:
    if stats is None:
        stats = QueryStats()
    m = len(pattern)
    if m == 0 or index.z == 0:
        return EMPTY_RESULT
    table = _pattern_table(index, pattern)
    lengths = index.lengths.lengths
    rights = (0,) + lengths
    state = MatchState()

    for j in range(1, m + 1):
        _left_major(index, table, lengths, rights, j, m, state, stats)
        _right_major(index, table, lengths, j, m, state, stats)
    return state.best


def _left_major(
    index: AlcsIndex,
    table: PrefixFpTable,
    lengths: Sequence[int],
    rights: Sequence[int],
    j: int,
    m: int,
    state: MatchState,
    stats: QueryStats,
) -> None:
    """Candidates with len_L >= len_R at split j."""
    a = bisect.bisect_right(lengths, state.ell // 2)  # first with 2*len > ell
    while a < len(lengths) and lengths[a] <= j:
        len_l = lengths[a]
        i = j - len_l + 1
        stats.lookups += 1
        x_lo, x_hi = index.map_left.lookup(len_l, substring_fp(table, i, j))
        if x_lo > x_hi:
            # suffixes of a miss can hit, extensions cannot
            return
        cap = min(len_l, m - j)
        b = bisect.bisect_right(rights, state.ell - len_l)
        while b < len(rights) and rights[b] <= cap:
            k = j + rights[b]
            occ = candidate_check(index, table, i, j, k, stats)
            if occ is None:
                break
            state.offer(i, j, k, occ, stats)
            b += 1
        a += 1


def _right_major(
    index: AlcsIndex,
    table: PrefixFpTable,
    lengths: Sequence[int],
    j: int,
    m: int,
    state: MatchState,
    stats: QueryStats,
) -> None:
    """Candidates with len_R > len_L at split j (len_L >= 1 always)."""
    b = bisect.bisect_right(lengths, state.ell // 2)
    while b < len(lengths) and lengths[b] <= m - j:
        len_r = lengths[b]
        k = j + len_r
        stats.lookups += 1
        y_lo, y_hi = index.map_right.lookup(len_r, substring_fp(table, j + 1, k))
        if y_lo > y_hi:
            return
        cap = min(len_r, j)
        a = bisect.bisect_right(lengths, state.ell - len_r)
        while a < len(lengths) and lengths[a] <= cap:
            i = j - lengths[a] + 1
            occ = candidate_check(index, table, i, j, k, stats)
            if occ is None:
                break
            state.offer(i, j, k, occ, stats)
            a += 1
        b += 1


def query(
    index: AlcsIndex,
    pattern: bytes,
    algo: Algo = Algo.PRUNED,
    stats: Optional[QueryStats] = None,
) -> QueryResult:
    if Algo(algo) is Algo.NAIVE:
        return query_naive(index, pattern, stats)
    return query_pruned(index, pattern, stats)


def query_many(
    index: AlcsIndex,
    patterns: Sequence[bytes],
    algo: Algo = Algo.PRUNED,
    threads: int = 1,
) -> List[QueryResult]:
    """Answer patterns in input order; threads > 1 shares the read-only index."""
    if threads <= 1 or len(patterns) <= 1:
        return [query(index, p, algo) for p in patterns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: query(index, p, algo), patterns))


def verify_result(result: QueryResult, pattern: bytes, text: bytes) -> bool:
    """True iff P[p_start..p_end] occurs in T at t_pos. Empty results pass."""
    if result.is_empty:
        return True
    if result.t_pos is None or result.p_start < 1 or result.p_end > len(pattern):
        return False
    if result.p_end - result.p_start + 1 != result.length:
        return False
    t0 = result.t_pos - 1
    if t0 < 0 or t0 + result.length > len(text):
        return False
    return pattern[result.p_start - 1:result.p_end] == text[t0:t0 + result.length]
