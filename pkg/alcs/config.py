# config.py
"""
Settings for the command line.

Defaults come from ``registries/defaults.yaml`` next to this module. A
second YAML file named by ``ALCS_CONFIG`` is merged on top, then the
single-key environment overrides ``ALCS_SEED`` and ``ALCS_LOG_LEVEL``.
Library functions never read settings; only ``cli`` does.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError

from .errors import ParameterError

REGISTRY_PATH = Path(__file__).resolve().parent / "registries" / "defaults.yaml"

SEED_LIMIT = 1 << 64


class BuildSettings(BaseModel):
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)
    seed: Optional[int] = Field(default=None, ge=0, lt=SEED_LIMIT)
    max_pattern_len: Optional[int] = Field(default=None, ge=1)
    max_build_attempts: int = Field(default=8, ge=1)


class QuerySettings(BaseModel):
    algo: str = "pruned"
    threads: int = Field(default=1, ge=1)


class GenSettings(BaseModel):
    base_len: int = Field(default=1024, ge=1)
    repeats: int = Field(default=64, ge=1)
    mut_rate: float = Field(default=0.001, ge=0.0, le=1.0)
    alphabet: str = Field(default="ACGT", min_length=1)
    seed: int = Field(default=7, ge=0)


class BenchSettings(BaseModel):
    pattern_len: int = Field(default=256, ge=1)
    pattern_count: int = Field(default=20, ge=1)
    mut_rate: float = Field(default=0.05, ge=0.0, le=1.0)
    repeats: int = Field(default=3, ge=1)
    seed: int = Field(default=7, ge=0)


class Settings(BaseModel):
    build: BuildSettings = BuildSettings()
    query: QuerySettings = QuerySettings()
    log_level: str = "WARNING"
    gen: GenSettings = GenSettings()
    bench: BenchSettings = BenchSettings()


def _read_yaml(path: Path) -> Dict[str, Any]:
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ParameterError(f"{path}: expected a mapping at top level")
    return data


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_settings(environ: Optional[Dict[str, str]] = None) -> Settings:
    """
    Resolve settings from the packaged defaults, ``ALCS_CONFIG`` and the
    single-key environment overrides.
    """
    env = os.environ if environ is None else environ

    data: Dict[str, Any] = {}
    if REGISTRY_PATH.exists():
        data = _read_yaml(REGISTRY_PATH)

    override_path = env.get("ALCS_CONFIG")
    if override_path:
        data = _merge(data, _read_yaml(Path(override_path)))

    seed = env.get("ALCS_SEED")
    if seed:
        try:
            value = int(seed, 0)
            data = _merge(data, {"build": {"seed": value}, "gen": {"seed": value}})
        except ValueError as exc:
            raise ParameterError(f"ALCS_SEED is not an integer: {seed!r}") from exc

    level = env.get("ALCS_LOG_LEVEL")
    if level:
        data["log_level"] = level.upper()

    try:
        return Settings.model_validate(data)
    except ValidationError as exc:
        raise ParameterError(f"invalid settings: {exc}") from exc
