# suffix_array.py
"""Suffix array (prefix doubling) and LCP array (Kasai) over byte strings."""
from __future__ import annotations

from typing import Optional

import numpy as np


def build_suffix_array(text: bytes) -> np.ndarray:
    """
    Return SA as an int64 array: SA[r] is the start of the r-th smallest
    suffix. A proper prefix sorts before its extensions.
    O(n log^2 n) with numpy sorts.
    """
    n = len(text)
    if n == 0:
        return np.zeros(0, dtype=np.int64)

    # compact to [0, sigma) so rank * (n + 1) + second never collides
    _, rank = np.unique(np.frombuffer(text, dtype=np.uint8), return_inverse=True)
    rank = rank.astype(np.int64).reshape(-1)
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        if k < n:
            # 0 marks "past the end", real ranks shifted by one
            second[: n - k] = rank[k:] + 1
        key = rank * (n + 1) + second
        sa = np.argsort(key, kind="stable")
        sorted_key = key[sa]
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[sa] = np.concatenate(
            ([0], np.cumsum(sorted_key[1:] != sorted_key[:-1]))
        )
        rank = new_rank
        if rank[sa[-1]] == n - 1 or k >= n:
            break
        k *= 2
    return sa.astype(np.int64, copy=False)


def inverse(sa: np.ndarray) -> np.ndarray:
    isa = np.empty_like(sa)
    isa[sa] = np.arange(len(sa), dtype=sa.dtype)
    return isa


def build_lcp_array(text: bytes, sa: np.ndarray, isa: Optional[np.ndarray] = None) -> np.ndarray:
    """lcp[r] = LCP(suffix SA[r-1], suffix SA[r]); lcp[0] = 0. Kasai, O(n)."""
    n = len(text)
    lcp = [0] * n
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if isa is None:
        isa = inverse(sa)
    sa_l = sa.tolist()
    isa_l = isa.tolist()
    h = 0
    for i in range(n):
        r = isa_l[i]
        if r == 0:
            h = 0
            continue
        j = sa_l[r - 1]
        while i + h < n and j + h < n and text[i + h] == text[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return np.asarray(lcp, dtype=np.int64)
