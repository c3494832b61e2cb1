# index_builder.py
"""
Index construction.

Given T and epsilon the index stores, and nothing else:

  * the length set {ceil((1/(1-eps))^e)} truncated at max_len,
  * map_left:  (d, fp(s)) -> co-lex rank range of the phrase-end
    prefixes T[1..e_t] that end with s, for |s| = d in the length set,
  * map_right: (d, fp(s)) -> lex rank range of the boundary suffixes
    T[e_t+1..n] that start with s, plus the empty string -> [1, z],
  * the z x z boundary grid pairing both ranks of every phrase end.

The text, its suffix arrays and LCP arrays are scaffolding and are
dropped before the index is returned.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import FingerprintCollisionError, ParameterError
from .kr_fingerprint import (
    KrParams,
    PrefixFpTable,
    build_prefix_table,
    draw_params,
    new_seed,
    substring_fp,
)
from .lz_parse import Lz77Parse, lz77_parse
from .range_grid import BoundaryGrid, grid_build
from .suffix_array import build_lcp_array, build_suffix_array, inverse

logger = logging.getLogger(__name__)

Interval = Tuple[int, int]
EMPTY_RANGE: Interval = (1, 0)


def check_epsilon(epsilon: float) -> float:
    try:
        eps = float(epsilon)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"epsilon must be a number, got {epsilon!r}") from exc
    if not 0.0 < eps < 1.0:
        raise ParameterError("epsilon must be in (0,1)")
    return eps


# ---- length set -------------------------------------------------------------


@dataclass(frozen=True)
class LengthSet:
    lengths: Tuple[int, ...]
    epsilon: float
    max_len: int

    def __len__(self) -> int:
        return len(self.lengths)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lengths)


# relative slack below which a float comparison is settled with exact integers
_FLOAT_SLACK = 1e-9


def length_set(epsilon: float, max_len: int) -> LengthSet:
    """
    All distinct ceil(r^e), r = 1/(1-epsilon), e >= 0, that do not exceed
    max_len. epsilon is read through its decimal repr so 0.1 means 1/10.
    Powers are compared in floating point; exact rational arithmetic is
    used only when a float result lands within _FLOAT_SLACK of the
    decision boundary.
    """
    eps = check_epsilon(epsilon)
    if max_len < 1:
        raise ParameterError(f"max_len must be >= 1, got {max_len}")

    ratio = 1 / (1 - Fraction(repr(eps)))
    num, den = ratio.numerator, ratio.denominator
    # log1p keeps full relative precision when epsilon is tiny
    log_ratio = -math.log1p(-float(1 - 1 / ratio))

    def exceeds(e: int, v: int) -> bool:
        """r^e > v."""
        gap = e * log_ratio - math.log(v)
        if abs(gap) > _FLOAT_SLACK:
            return gap > 0
        return num ** e > v * den ** e

    def ceil_pow(e: int, v: int) -> int:
        """ceil(r^e) given r^e > v."""
        x = math.exp(e * log_ratio)
        c = math.ceil(x)
        if c - x > _FLOAT_SLACK * x and x - (c - 1) > _FLOAT_SLACK * x:
            return c
        if round(x) == v:
            return v + 1
        return -((-(num ** e)) // den ** e)

    lengths = [1]
    e, v = 0, 1
    while True:
        # smallest e' > e with r^e' > v
        e_next = max(e + 1, int(math.log(v) / log_ratio) + 1)
        while e_next > e + 1 and exceeds(e_next - 1, v):
            e_next -= 1
        while not exceeds(e_next, v):
            e_next += 1
        v_next = ceil_pow(e_next, v)
        if v_next > max_len:
            break
        lengths.append(v_next)
        e, v = e_next, v_next

    return LengthSet(lengths=tuple(lengths), epsilon=eps, max_len=max_len)


# ---- boundary ranks ---------------------------------------------------------


@dataclass
class _Scaffold:
    """Suffix arrays of T and reversed T; construction-time only."""

    sa: np.ndarray
    isa: np.ndarray
    lcp: np.ndarray
    rev_isa: np.ndarray
    rev_lcp: np.ndarray

    @classmethod
    def build(cls, text: bytes, sa: Optional[np.ndarray] = None) -> "_Scaffold":
        if sa is None:
            sa = build_suffix_array(text)
        isa = inverse(sa)
        rev = text[::-1]
        rev_sa = build_suffix_array(rev)
        rev_isa = inverse(rev_sa)
        return cls(
            sa=sa,
            isa=isa,
            lcp=build_lcp_array(text, sa, isa),
            rev_isa=rev_isa,
            rev_lcp=build_lcp_array(rev, rev_sa, rev_isa),
        )


@dataclass(frozen=True)
class RankedBoundaries:
    x_rank: Tuple[int, ...]  # co-lex rank of T[1..e_t], 1-based, per phrase t
    y_rank: Tuple[int, ...]  # lex rank of T[e_t+1..n], 1-based, per phrase t

    @property
    def z(self) -> int:
        return len(self.x_rank)

    def x_order(self) -> List[int]:
        """Phrase indices sorted by x rank."""
        return _order_from_ranks(self.x_rank)

    def y_order(self) -> List[int]:
        return _order_from_ranks(self.y_rank)


def _order_from_ranks(ranks: Sequence[int]) -> List[int]:
    order = [0] * len(ranks)
    for t, r in enumerate(ranks):
        order[r - 1] = t
    return order


def _ranks_from_keys(keys: Sequence[int]) -> Tuple[int, ...]:
    order = sorted(range(len(keys)), key=keys.__getitem__)
    ranks = [0] * len(keys)
    for r, t in enumerate(order, start=1):
        ranks[t] = r
    return tuple(ranks)


def rank_boundaries(
    text: bytes, parse: Lz77Parse, scaffold: Optional[_Scaffold] = None
) -> RankedBoundaries:
    n = len(text)
    if parse.n != n:
        raise ParameterError(f"parse covers {parse.n} bytes, text has {n}")
    if parse.z == 0:
        return RankedBoundaries(x_rank=(), y_rank=())
    if scaffold is None:
        scaffold = _Scaffold.build(text)
    ends = parse.ends
    rev_isa = scaffold.rev_isa
    isa = scaffold.isa
    # reversed T[1..e] is the suffix of reversed T starting at n - e (0-based)
    x_keys = [int(rev_isa[n - e]) for e in ends]
    # the empty suffix after e_z = n sorts first
    y_keys = [int(isa[e]) if e < n else -1 for e in ends]
    return RankedBoundaries(x_rank=_ranks_from_keys(x_keys), y_rank=_ranks_from_keys(y_keys))


# ---- fingerprint range maps -------------------------------------------------


@dataclass(frozen=True)
class FingerprintRangeMap:
    entries: Dict[Tuple[int, int], Interval]

    def lookup(self, length: int, fp: int) -> Interval:
        return self.entries.get((length, fp), EMPTY_RANGE)

    def __len__(self) -> int:
        return len(self.entries)

    def sorted_items(self) -> List[Tuple[Tuple[int, int], Interval]]:
        return sorted(self.entries.items())


def _adjacent_lcps(lcp: np.ndarray, sorted_ranks: Sequence[int]) -> List[int]:
    """
    adj[q] = LCP of the strings at SA ranks sorted_ranks[q-1] and
    sorted_ranks[q] (a range minimum over the LCP array); adj[0] = 0.
    """
    k = len(sorted_ranks)
    if k <= 1:
        return [0] * k
    padded = np.append(lcp, 0)
    starts = np.asarray(sorted_ranks, dtype=np.int64) + 1
    mins = np.minimum.reduceat(padded, starts)
    return [0] + [int(v) for v in mins[:-1]]


def _group_ranges(
    adj: Sequence[int],
    str_len: Sequence[int],
    lengths: LengthSet,
    fp_at: Callable[[int, int], int],
    side: str,
) -> Dict[Tuple[int, int], Interval]:
    """
    For each d, maximal runs of sorted boundary strings sharing their
    first d characters (in sort order) become one entry keyed by the
    fingerprint of that common part.
    """
    z = len(adj)
    entries: Dict[Tuple[int, int], Interval] = {}
    for d in lengths:
        q = 0
        while q < z:
            if str_len[q] < d:
                q += 1
                continue
            p = q
            while q + 1 < z and adj[q + 1] >= d:
                q += 1
            key = (d, fp_at(p, d))
            if key in entries:
                raise FingerprintCollisionError(
                    f"{side} map: two distinct length-{d} strings share fingerprint {key[1]}"
                )
            entries[key] = (p + 1, q + 1)
            q += 1
    return entries


def build_left_map(
    text: bytes,
    parse: Lz77Parse,
    ranks: RankedBoundaries,
    lengths: LengthSet,
    kr: KrParams,
    scaffold: Optional[_Scaffold] = None,
    table: Optional[PrefixFpTable] = None,
) -> FingerprintRangeMap:
    n = len(text)
    if parse.z == 0:
        return FingerprintRangeMap(entries={})
    if scaffold is None:
        scaffold = _Scaffold.build(text)
    if table is None:
        table = build_prefix_table(text, kr)
    ends = parse.ends
    order = ranks.x_order()
    sorted_ends = [ends[t] for t in order]
    adj = _adjacent_lcps(scaffold.rev_lcp, [int(scaffold.rev_isa[n - e]) for e in sorted_ends])

    def fp_at(q: int, d: int) -> int:
        e = sorted_ends[q]
        return substring_fp(table, e - d + 1, e)

    return FingerprintRangeMap(entries=_group_ranges(adj, sorted_ends, lengths, fp_at, "left"))


def build_right_map(
    text: bytes,
    parse: Lz77Parse,
    ranks: RankedBoundaries,
    lengths: LengthSet,
    kr: KrParams,
    scaffold: Optional[_Scaffold] = None,
    table: Optional[PrefixFpTable] = None,
) -> FingerprintRangeMap:
    n = len(text)
    z = parse.z
    if z == 0:
        return FingerprintRangeMap(entries={})
    if scaffold is None:
        scaffold = _Scaffold.build(text)
    if table is None:
        table = build_prefix_table(text, kr)
    ends = parse.ends
    order = ranks.y_order()
    sorted_ends = [ends[t] for t in order]
    # rank 1 is the empty suffix after e_z = n; it shares nothing with its neighbour
    tail = [int(scaffold.isa[e]) for e in sorted_ends[1:]]
    adj = [0] + _adjacent_lcps(scaffold.lcp, tail)
    str_len = [n - e for e in sorted_ends]

    def fp_at(q: int, d: int) -> int:
        e = sorted_ends[q]
        return substring_fp(table, e + 1, e + d)

    entries = _group_ranges(adj, str_len, lengths, fp_at, "right")
    entries[(0, 0)] = (1, z)
    return FingerprintRangeMap(entries=entries)


# ---- the index --------------------------------------------------------------


@dataclass(frozen=True)
class AlcsIndex:
    kr: KrParams
    epsilon: float
    n: int
    z: int
    lengths: LengthSet
    map_left: FingerprintRangeMap
    map_right: FingerprintRangeMap
    grid: BoundaryGrid

    @property
    def build_seed(self) -> int:
        return self.kr.seed

    @property
    def entry_count(self) -> int:
        return len(self.map_left) + len(self.map_right)


def build_index(
    text: bytes,
    epsilon: float,
    seed: Optional[int] = None,
    max_pattern_len: Optional[int] = None,
    max_attempts: int = 8,
) -> AlcsIndex:
    eps = check_epsilon(epsilon)
    if max_pattern_len is not None and max_pattern_len < 1:
        raise ParameterError(f"max_pattern_len must be >= 1, got {max_pattern_len}")
    if max_attempts < 1:
        raise ParameterError(f"max_attempts must be >= 1, got {max_attempts}")
    if seed is None:
        seed = new_seed()

    text = bytes(text)
    n = len(text)
    started = time.perf_counter()

    if n == 0:
        return AlcsIndex(
            kr=draw_params(seed),
            epsilon=eps,
            n=0,
            z=0,
            lengths=LengthSet(lengths=(), epsilon=eps, max_len=0),
            map_left=FingerprintRangeMap(entries={}),
            map_right=FingerprintRangeMap(entries={}),
            grid=grid_build([]),
        )

    scaffold = _Scaffold.build(text)
    parse = lz77_parse(text, sa=scaffold.sa)
    ranks = rank_boundaries(text, parse, scaffold)
    max_len = n if max_pattern_len is None else min(n, max_pattern_len)
    lengths = length_set(eps, max_len)
    logger.info("parsed n=%d z=%d, %d lengths", n, parse.z, len(lengths))

    for attempt in range(max_attempts):
        kr = draw_params(seed, attempt)
        table = build_prefix_table(text, kr)
        try:
            map_left = build_left_map(text, parse, ranks, lengths, kr, scaffold, table)
            map_right = build_right_map(text, parse, ranks, lengths, kr, scaffold, table)
            break
        except FingerprintCollisionError as exc:
            logger.warning("attempt %d: %s; re-drawing base", attempt, exc)
    else:
        raise FingerprintCollisionError(
            f"no collision-free base after {max_attempts} attempts (seed {seed})"
        )

    ends = parse.ends
    grid = grid_build(
        [(ranks.x_rank[t], ranks.y_rank[t], ends[t]) for t in range(parse.z)]
    )
    logger.info(
        "built index: %d left + %d right entries in %.3fs",
        len(map_left), len(map_right), time.perf_counter() - started,
    )
    return AlcsIndex(
        kr=kr,
        epsilon=eps,
        n=n,
        z=parse.z,
        lengths=lengths,
        map_left=map_left,
        map_right=map_right,
        grid=grid,
    )
