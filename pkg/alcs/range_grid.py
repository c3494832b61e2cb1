# range_grid.py
"""
The z x z boundary grid.

Point t sits at (x_rank[t], y_rank[t]) and remembers the text position
e_t of its phrase end. Both coordinates are permutations of [1..z], so
the grid is stored as y_of_x and queried through a level-wise wavelet
tree over y_of_x: ceil(log2 z) bit-vectors of length z, level l holding
bit l (from the top) of each value, with the values of level l+1 stably
partitioned by their top l+1 bits.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError

logger = logging.getLogger(__name__)

BLOCK_BITS = 512
_BLOCK_BYTES = BLOCK_BITS // 8
_POPCOUNT = np.array([bin(v).count("1") for v in range(256)], dtype=np.int64)

GridPoint = Tuple[int, int, int]


class BitVector:
    """Packed bits with a one-level rank directory of 512-bit blocks."""

    __slots__ = ("size", "packed", "block_ranks")

    def __init__(self, bits: np.ndarray) -> None:
        bits = np.asarray(bits, dtype=np.uint8)
        self.size = int(bits.shape[0])
        self.packed = np.packbits(bits)
        n_blocks = (self.size + BLOCK_BITS - 1) // BLOCK_BITS
        ranks = np.zeros(n_blocks + 1, dtype=np.int64)
        if n_blocks:
            per_block = np.add.reduceat(
                _POPCOUNT[self.packed], np.arange(0, len(self.packed), _BLOCK_BYTES)
            )
            ranks[1:] = np.cumsum(per_block)
        self.block_ranks = ranks

    def __len__(self) -> int:
        return self.size

    def access(self, i: int) -> int:
        return (int(self.packed[i >> 3]) >> (7 - (i & 7))) & 1

    def rank1(self, i: int) -> int:
        """Number of ones in positions [0, i)."""
        block = i // BLOCK_BITS
        count = int(self.block_ranks[block])
        lo = block * _BLOCK_BYTES
        hi = i >> 3
        if hi > lo:
            count += int(_POPCOUNT[self.packed[lo:hi]].sum())
        rem = i & 7
        if rem:
            count += int(_POPCOUNT[int(self.packed[hi]) >> (8 - rem)])
        return count

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)


class BoundaryGrid:
    def __init__(self, y_of_x: np.ndarray, boundary_of_x: np.ndarray) -> None:
        self.z = int(len(y_of_x))
        self.y_of_x = np.asarray(y_of_x, dtype=np.uint32)
        self.boundary_of_x = np.asarray(boundary_of_x, dtype=np.uint64)
        # x of each y (both 0-based); a leaf value maps straight back to its point
        self.x_of_y = np.empty(self.z, dtype=np.int64)
        self.x_of_y[self.y_of_x.astype(np.int64) - 1] = np.arange(self.z, dtype=np.int64)
        self.height = (self.z - 1).bit_length() if self.z > 1 else 0
        self.levels: List[BitVector] = self._build_levels()

    def _build_levels(self) -> List[BitVector]:
        levels: List[BitVector] = []
        values = self.y_of_x.astype(np.int64) - 1
        for level in range(self.height):
            shift = self.height - 1 - level
            levels.append(BitVector((values >> shift) & 1))
            values = values[np.argsort(values >> shift, kind="stable")]
        return levels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoundaryGrid):
            return NotImplemented
        return (
            self.z == other.z
            and np.array_equal(self.y_of_x, other.y_of_x)
            and np.array_equal(self.boundary_of_x, other.boundary_of_x)
        )

    def __repr__(self) -> str:
        return f"BoundaryGrid(z={self.z}, height={self.height})"

    # --- wavelet tree reads ---

    def access(self, x: int) -> int:
        """y of the point in column x (1-based), read from the wavelet levels."""
        if not 1 <= x <= self.z:
            raise ParameterError(f"x={x} outside [1, {self.z}]")
        pos, start, end, value = x - 1, 0, self.z, 0
        for bv in self.levels:
            zeros_before = bv.rank0(start)
            zeros = bv.rank0(end) - zeros_before
            if bv.access(pos):
                pos = start + zeros + bv.rank1(pos) - bv.rank1(start)
                start = start + zeros
                value = value * 2 + 1
            else:
                pos = start + bv.rank0(pos) - zeros_before
                end = start + zeros
                value = value * 2
        return value + 1

    def reconstruct(self) -> List[int]:
        return [self.access(x) for x in range(1, self.z + 1)]

    def _find(self, a: int, b: int, lo: int, hi: int) -> Optional[int]:
        """
        Some 0-based value in [lo, hi] occurring at 0-based positions
        [a, b) of the sequence, or None. Visits O(log z) nodes.
        """
        # node: (level, value prefix, segment start, segment end, query a, query b)
        stack = [(0, 0, 0, self.z, a, b)]
        while stack:
            level, prefix, start, end, qa, qb = stack.pop()
            if qa >= qb:
                continue
            span = 1 << (self.height - level)
            v_lo = prefix * span
            v_hi = v_lo + span - 1
            if v_hi < lo or v_lo > hi:
                continue
            if level == self.height:
                return v_lo
            bv = self.levels[level]
            r0_start = bv.rank0(start)
            r0_a = bv.rank0(qa)
            r0_b = bv.rank0(qb)
            zeros = bv.rank0(end) - r0_start
            mid = start + zeros
            left = (level + 1, prefix * 2, start, mid,
                    start + r0_a - r0_start, start + r0_b - r0_start)
            r1_start = start - r0_start
            right = (level + 1, prefix * 2 + 1, mid, end,
                     mid + (qa - r0_a) - r1_start, mid + (qb - r0_b) - r1_start)
            stack.append(right)
            stack.append(left)
        return None

    def _clip(self, x_lo: int, x_hi: int, y_lo: int, y_hi: int) -> Optional[Tuple[int, int, int, int]]:
        x_lo, y_lo = max(x_lo, 1), max(y_lo, 1)
        x_hi, y_hi = min(x_hi, self.z), min(y_hi, self.z)
        if x_lo > x_hi or y_lo > y_hi:
            return None
        return x_lo, x_hi, y_lo, y_hi


def is_nonempty(grid: BoundaryGrid, x_lo: int, x_hi: int, y_lo: int, y_hi: int) -> bool:
    return report_any(grid, x_lo, x_hi, y_lo, y_hi) is not None


def report_any(
    grid: BoundaryGrid, x_lo: int, x_hi: int, y_lo: int, y_hi: int
) -> Optional[GridPoint]:
    """Some point (x, y, boundary_pos) inside the closed rectangle, or None."""
    rect = grid._clip(x_lo, x_hi, y_lo, y_hi)
    if rect is None:
        return None
    x_lo, x_hi, y_lo, y_hi = rect
    value = grid._find(x_lo - 1, x_hi, y_lo - 1, y_hi - 1)
    if value is None:
        return None
    x = int(grid.x_of_y[value])
    return x + 1, value + 1, int(grid.boundary_of_x[x])


def grid_build(points: Sequence[GridPoint]) -> BoundaryGrid:
    """Build from (x, y, boundary_pos) triples; x and y must each be permutations of [1..z]."""
    z = len(points)
    y_of_x = np.zeros(z, dtype=np.uint32)
    boundary_of_x = np.zeros(z, dtype=np.uint64)
    seen_x = np.zeros(z + 1, dtype=bool)
    seen_y = np.zeros(z + 1, dtype=bool)
    for x, y, pos in points:
        if not (1 <= x <= z and 1 <= y <= z):
            raise ParameterError(f"point ({x}, {y}) outside [1, {z}]^2")
        if seen_x[x] or seen_y[y]:
            raise ParameterError(f"point ({x}, {y}) repeats a row or column")
        if pos < 1:
            raise ParameterError(f"boundary position {pos} must be >= 1")
        seen_x[x] = seen_y[y] = True
        y_of_x[x - 1] = y
        boundary_of_x[x - 1] = pos
    logger.debug("grid: z=%d", z)
    return BoundaryGrid(y_of_x, boundary_of_x)
