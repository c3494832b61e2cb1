# bench.py
"""
Benchmark harness: per-query latency and grid-check counts, aggregated
with pandas. The grid-check count is the observable stand-in for the
query-time bounds: linear in m for the pruned algorithm.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from .index_builder import AlcsIndex
from .query_engine import Algo, QueryStats, query
from .schema import BenchRow

logger = logging.getLogger(__name__)


def measure(
    index: AlcsIndex,
    patterns: Sequence[bytes],
    algos: Sequence[Algo] = (Algo.NAIVE, Algo.PRUNED),
    repeats: int = 1,
) -> pd.DataFrame:
    """One row per (algo, pattern, repeat): latency_ms, grid_checks, length."""
    rows: List[Dict[str, object]] = []
    for algo in algos:
        for ordinal, pattern in enumerate(patterns, start=1):
            for rep in range(repeats):
                stats = QueryStats()
                started = time.perf_counter()
                result = query(index, pattern, algo, stats)
                elapsed = (time.perf_counter() - started) * 1000.0
                rows.append({
                    "algo": Algo(algo).value,
                    "ordinal": ordinal,
                    "repeat": rep,
                    "m": len(pattern),
                    "latency_ms": elapsed,
                    "grid_checks": stats.grid_checks,
                    "length": result.length,
                })
    return pd.DataFrame(
        rows, columns=["algo", "ordinal", "repeat", "m", "latency_ms", "grid_checks", "length"]
    )


def summarize(frame: pd.DataFrame) -> List[BenchRow]:
    out: List[BenchRow] = []
    for algo, group in frame.groupby("algo", sort=True):
        # check counts are deterministic; count them once per pattern
        first = group[group["repeat"] == 0]
        out.append(BenchRow(
            algo=str(algo),
            patterns=int(first["ordinal"].nunique()),
            mean_ms=float(group["latency_ms"].mean()),
            median_ms=float(group["latency_ms"].median()),
            p99_ms=float(group["latency_ms"].quantile(0.99)),
            mean_checks=float(first["grid_checks"].mean()),
            total_checks=int(first["grid_checks"].sum()),
            mean_length=float(first["length"].mean()),
        ))
    return out


def run_bench(
    index: AlcsIndex,
    patterns: Sequence[bytes],
    algos: Sequence[Algo] = (Algo.NAIVE, Algo.PRUNED),
    repeats: int = 1,
) -> List[BenchRow]:
    frame = measure(index, patterns, algos, repeats)
    rows = summarize(frame)
    for row in rows:
        logger.info("%s: mean %.3f ms, %.1f checks/query", row.algo, row.mean_ms, row.mean_checks)
    return rows


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r_squared: float
    end_ratio: float


def scaling_fit(sizes: Sequence[float], checks: Sequence[float]) -> ScalingFit:
    """Least-squares line of checks against pattern length."""
    x = np.asarray(sizes, dtype=float)
    y = np.asarray(checks, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    ss_res = float(((y - predicted) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    ratio = float(y[-1] / y[0]) if y[0] else float("inf")
    return ScalingFit(slope=float(slope), intercept=float(intercept), r_squared=r2, end_ratio=ratio)
