# schema.py
from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

COMMANDS = ("build", "query", "oracle", "gen", "bench", "stats")


class CliConfig(BaseModel):
    """Validated command line; every flag combination is checked before any work."""

    command: str
    text: Optional[str] = None
    pattern: Optional[str] = None
    patterns_file: Optional[str] = None
    index: Optional[str] = None
    out: Optional[str] = None
    epsilon: float = 0.1
    max_pattern_len: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, lt=1 << 64)
    max_build_attempts: int = Field(default=8, ge=1)
    algo: str = "pruned"
    verify: bool = False
    threads: int = Field(default=1, ge=1)
    json_output: bool = False
    base_len: int = Field(default=1024, ge=1)
    repeats: int = Field(default=64, ge=1)
    mut_rate: float = Field(default=0.001, ge=0.0, le=1.0)
    alphabet: str = Field(default="ACGT", min_length=1)
    pattern_len: int = Field(default=256, ge=1)
    pattern_count: int = Field(default=20, ge=1)
    bench_repeats: int = Field(default=3, ge=1)

    @field_validator("epsilon")
    @classmethod
    def _epsilon_open_unit(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("epsilon must be in (0,1)")
        return v

    @field_validator("command")
    @classmethod
    def _known_command(cls, v: str) -> str:
        if v not in COMMANDS:
            raise ValueError(f"unknown command {v!r}")
        return v

    @model_validator(mode="after")
    def _required_flags(self) -> "CliConfig":
        need = {
            "build": ("text", "out"),
            "query": ("index",),
            "oracle": ("text", "pattern"),
            "gen": ("out",),
            "bench": ("text",),
            "stats": ("index",),
        }[self.command]
        missing = [f"--{name.replace('_', '-')}" for name in need if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.command} requires {', '.join(missing)}")
        if self.command == "query":
            if (self.pattern is None) == (self.patterns_file is None):
                raise ValueError("query requires exactly one of --pattern, --patterns-file")
            if self.verify and self.text is None:
                raise ValueError("--verify requires --text")
            if self.algo not in ("naive", "pruned"):
                raise ValueError(f"--algo must be naive or pruned, got {self.algo!r}")
        if self.command == "bench" and self.algo not in ("naive", "pruned", "both"):
            raise ValueError(f"--algo must be naive, pruned or both, got {self.algo!r}")
        return self


class BuildReport(BaseModel):
    n: int
    z: int
    lengths: int
    left_entries: int
    right_entries: int
    bytes: int
    seconds: float
    seed: int


class QueryRecord(BaseModel):
    ordinal: int
    length: int
    p_start: Optional[int]
    p_end: Optional[int]
    t_pos: Optional[int]
    hex: Optional[str]
    verified: Optional[bool] = None


class OracleReport(BaseModel):
    length: int
    p_start: Optional[int]
    p_end: Optional[int]
    t_start: Optional[int]
    t_end: Optional[int]


class GenReport(BaseModel):
    bytes: int
    seed: int
    out: str


class BenchRow(BaseModel):
    algo: str
    patterns: int
    mean_ms: float
    median_ms: float
    p99_ms: float
    mean_checks: float
    total_checks: int
    mean_length: float


class BenchReport(BaseModel):
    n: int
    z: int
    build_seconds: float
    index_bytes: int
    rows: List[BenchRow]


class StatsReport(BaseModel):
    version: int
    epsilon: float
    n: int
    z: int
    base: int
    seed: int
    max_len: int
    lengths: int
    left_entries: int
    right_entries: int
    file_bytes: int
