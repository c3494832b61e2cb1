# cli.py
"""
alcs command line.

    alcs build  --text T --out T.idx [--epsilon E] [--max-pattern-len M] [--seed S]
    alcs query  --index T.idx (--pattern P | --patterns-file F|-) [--algo naive|pruned]
                [--verify --text T] [--threads N]
    alcs oracle --text T --pattern P
    alcs gen    --out C [--base-len B] [--repeats R] [--mut-rate U] [--alphabet A] [--seed S]
    alcs bench  --text T [--patterns-file F] [--algo naive|pruned|both]
    alcs stats  --index T.idx

Every subcommand takes --json and --log-level. Reports go to stdout,
logs and errors to stderr. Exit codes: 0 ok, 1 error, 2 verification
failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, ValidationError

from . import corpus, index_io
from .bench import run_bench
from .config import Settings, load_settings
from .errors import AlcsError
from .index_builder import build_index
from .oracle import exact_lcs
from .query_engine import Algo, QueryResult, query_many, verify_result
from .schema import (
    BenchReport,
    BuildReport,
    CliConfig,
    GenReport,
    OracleReport,
    QueryRecord,
    StatsReport,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY = 2


# ---- input helpers ----------------------------------------------------------


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def split_patterns(data: bytes) -> List[bytes]:
    """One pattern per line; a final newline does not add an empty pattern."""
    if not data:
        return []
    lines = data.split(b"\n")
    if lines[-1] == b"":
        lines.pop()
    return lines


def _emit(report: BaseModel, as_json: bool) -> None:
    if as_json:
        print(report.model_dump_json())
        return
    for key, value in report.model_dump().items():
        print(f"{key}={value}")


def _dash(value: Optional[int]) -> str:
    return "-" if value is None else str(value)


def format_record(record: QueryRecord) -> str:
    return "\t".join([
        str(record.ordinal),
        str(record.length),
        _dash(record.p_start),
        _dash(record.p_end),
        _dash(record.t_pos),
        record.hex if record.hex is not None else "-",
    ])


def _record(ordinal: int, result: QueryResult, pattern: bytes) -> QueryRecord:
    if result.is_empty:
        return QueryRecord(ordinal=ordinal, length=0, p_start=None, p_end=None, t_pos=None, hex=None)
    return QueryRecord(
        ordinal=ordinal,
        length=result.length,
        p_start=result.p_start,
        p_end=result.p_end,
        t_pos=result.t_pos,
        hex=pattern[result.p_start - 1:result.p_end].hex(),
    )


# ---- subcommands ------------------------------------------------------------


def cmd_build(cfg: CliConfig) -> int:
    text = _read_bytes(cfg.text)
    started = time.perf_counter()
    index = build_index(
        text,
        cfg.epsilon,
        seed=cfg.seed,
        max_pattern_len=cfg.max_pattern_len,
        max_attempts=cfg.max_build_attempts,
    )
    written = index_io.save_path(index, cfg.out)
    report = BuildReport(
        n=index.n,
        z=index.z,
        lengths=len(index.lengths),
        left_entries=len(index.map_left),
        right_entries=len(index.map_right),
        bytes=written,
        seconds=round(time.perf_counter() - started, 6),
        seed=index.build_seed,
    )
    _emit(report, cfg.json_output)
    return EXIT_OK


def cmd_query(cfg: CliConfig) -> int:
    index = index_io.load_path(cfg.index)
    if cfg.pattern is not None:
        patterns = [_read_bytes(cfg.pattern)]
    else:
        patterns = split_patterns(_read_bytes(cfg.patterns_file))
    text = _read_bytes(cfg.text) if cfg.verify else None

    results = query_many(index, patterns, Algo(cfg.algo), cfg.threads)

    failed: List[int] = []
    for ordinal, (pattern, result) in enumerate(zip(patterns, results), start=1):
        record = _record(ordinal, result, pattern)
        if text is not None:
            record.verified = verify_result(result, pattern, text)
            if not record.verified:
                failed.append(ordinal)
        print(record.model_dump_json() if cfg.json_output else format_record(record))

    for ordinal in failed:
        print(f"verification failed: pattern {ordinal}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_oracle(cfg: CliConfig) -> int:
    text = _read_bytes(cfg.text)
    pattern = _read_bytes(cfg.pattern)
    answer = exact_lcs(pattern, text)
    empty = answer.length == 0
    report = OracleReport(
        length=answer.length,
        p_start=None if empty else answer.p_span[0],
        p_end=None if empty else answer.p_span[1],
        t_start=None if empty else answer.t_span[0],
        t_end=None if empty else answer.t_span[1],
    )
    if cfg.json_output:
        print(report.model_dump_json())
    else:
        for key, value in report.model_dump().items():
            print(f"{key}={_dash(value)}")
    return EXIT_OK


def cmd_gen(cfg: CliConfig, settings: Settings) -> int:
    seed = cfg.seed if cfg.seed is not None else settings.gen.seed
    data = corpus.generate(
        cfg.base_len, cfg.repeats, cfg.mut_rate, seed, cfg.alphabet.encode("latin-1")
    )
    with open(cfg.out, "wb") as f:
        f.write(data)
    _emit(GenReport(bytes=len(data), seed=seed, out=cfg.out), cfg.json_output)
    return EXIT_OK


def cmd_bench(cfg: CliConfig, settings: Settings) -> int:
    text = _read_bytes(cfg.text)
    started = time.perf_counter()
    index = build_index(
        text,
        cfg.epsilon,
        seed=cfg.seed,
        max_pattern_len=cfg.max_pattern_len,
        max_attempts=cfg.max_build_attempts,
    )
    build_seconds = time.perf_counter() - started
    index_bytes = len(index_io.dumps(index))

    if cfg.patterns_file is not None:
        patterns = split_patterns(_read_bytes(cfg.patterns_file))
    else:
        patterns = corpus.sample_patterns(
            text, cfg.pattern_count, cfg.pattern_len, settings.bench.mut_rate, settings.bench.seed
        )
    algos = (Algo.NAIVE, Algo.PRUNED) if cfg.algo == "both" else (Algo(cfg.algo),)
    rows = run_bench(index, patterns, algos, cfg.bench_repeats)

    report = BenchReport(
        n=index.n, z=index.z, build_seconds=round(build_seconds, 6), index_bytes=index_bytes, rows=rows
    )
    if cfg.json_output:
        print(report.model_dump_json())
        return EXIT_OK
    print(f"n={report.n}")
    print(f"z={report.z}")
    print(f"build_seconds={report.build_seconds}")
    print(f"index_bytes={report.index_bytes}")
    for row in rows:
        for key, value in row.model_dump().items():
            if key != "algo":
                print(f"{row.algo}.{key}={value}")
    return EXIT_OK


def cmd_stats(cfg: CliConfig) -> int:
    header = index_io.header_path(cfg.index)
    report = StatsReport(
        version=header.version,
        epsilon=header.epsilon,
        n=header.n,
        z=header.z,
        base=header.base,
        seed=header.seed,
        max_len=header.max_len,
        lengths=len(header.lengths),
        left_entries=header.left_entries,
        right_entries=header.right_entries,
        file_bytes=header.file_bytes,
    )
    _emit(report, cfg.json_output)
    return EXIT_OK


# ---- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", dest="json_output", action="store_true",
                        help="machine-readable report")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")

    parser = argparse.ArgumentParser(prog="alcs", description="approximate LCS over an LZ77-compressed index")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build an index file")
    p.add_argument("--text", required=True)
    p.add_argument("--out", required=True)
    _add_build_flags(p)

    p = sub.add_parser("query", parents=[common], help="query patterns against an index")
    p.add_argument("--index", required=True)
    p.add_argument("--pattern", help="file holding one pattern")
    p.add_argument("--patterns-file", help="one pattern per line; '-' reads stdin")
    p.add_argument("--algo", choices=["naive", "pruned"], default=None)
    p.add_argument("--verify", action="store_true", help="re-check answers against --text")
    p.add_argument("--text")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("oracle", parents=[common], help="exact LCS of two files")
    p.add_argument("--text", required=True)
    p.add_argument("--pattern", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a seeded repetitive corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--base-len", type=int, default=None)
    p.add_argument("--repeats", type=int, default=None)
    p.add_argument("--mut-rate", type=float, default=None)
    p.add_argument("--alphabet", default=None)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None)

    p = sub.add_parser("bench", parents=[common], help="time queries on a text")
    p.add_argument("--text", required=True)
    p.add_argument("--patterns-file")
    p.add_argument("--algo", choices=["naive", "pruned", "both"], default="both")
    p.add_argument("--pattern-len", type=int, default=None)
    p.add_argument("--pattern-count", type=int, default=None)
    p.add_argument("--repeats", dest="bench_repeats", type=int, default=None)
    _add_build_flags(p)

    p = sub.add_parser("stats", parents=[common], help="print index header fields")
    p.add_argument("--index", required=True)
    return parser


def _add_build_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--max-pattern-len", type=int, default=None)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help="fingerprint seed (default: ALCS_SEED, else random)")


def resolve_config(args: argparse.Namespace, settings: Settings) -> CliConfig:
    """Flags override settings; unset flags fall back to them."""
    defaults = {
        "epsilon": settings.build.epsilon,
        "max_pattern_len": settings.build.max_pattern_len,
        "seed": settings.build.seed,
        "max_build_attempts": settings.build.max_build_attempts,
        "algo": settings.query.algo,
        "threads": settings.query.threads,
        "base_len": settings.gen.base_len,
        "repeats": settings.gen.repeats,
        "mut_rate": settings.gen.mut_rate,
        "alphabet": settings.gen.alphabet,
        "pattern_len": settings.bench.pattern_len,
        "pattern_count": settings.bench.pattern_count,
        "bench_repeats": settings.bench.repeats,
    }
    if args.command == "gen":
        defaults["seed"] = settings.gen.seed
    values = {k: v for k, v in vars(args).items() if v is not None and k != "log_level"}
    return CliConfig.model_validate({**defaults, **values})


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        inner = err.get("ctx", {}).get("error")
        parts.append(str(inner) if inner is not None else err["msg"])
    return "; ".join(parts)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings()
        level = (args.log_level or settings.log_level).upper()
        logging.basicConfig(
            stream=sys.stderr,
            level=getattr(logging, level, logging.WARNING),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
        cfg = resolve_config(args, settings)
        handlers: Dict[str, Callable[[], int]] = {
            "build": lambda: cmd_build(cfg),
            "query": lambda: cmd_query(cfg),
            "oracle": lambda: cmd_oracle(cfg),
            "gen": lambda: cmd_gen(cfg, settings),
            "bench": lambda: cmd_bench(cfg, settings),
            "stats": lambda: cmd_stats(cfg),
        }
        return handlers[cfg.command]()
    except ValidationError as exc:
        print(f"error: {_validation_message(exc)}", file=sys.stderr)
    except (AlcsError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
