"""
test_config.py

  • Packaged defaults load.
  • ALCS_CONFIG merges a YAML file; ALCS_SEED / ALCS_LOG_LEVEL override.
  • Invalid values surface as ParameterError.
"""
import pytest

from alcs.config import REGISTRY_PATH, load_settings
from alcs.errors import ParameterError


def test_defaults():
    assert REGISTRY_PATH.exists()
    settings = load_settings({})
    assert settings.build.epsilon == 0.1
    assert settings.build.seed is None
    assert settings.build.max_build_attempts == 8
    assert settings.query.algo == "pruned"
    assert settings.query.threads == 1
    assert settings.log_level == "WARNING"
    assert settings.gen.base_len == 1024
    assert settings.gen.alphabet == "ACGT"
    assert settings.bench.pattern_len == 256


def test_override_file_and_env(tmp_path):
    override = tmp_path / "site.yaml"
    override.write_text("build:\n  epsilon: 0.25\n  seed: 3\nquery:\n  threads: 4\n")
    settings = load_settings({
        "ALCS_CONFIG": str(override),
        "ALCS_SEED": "0x10",
        "ALCS_LOG_LEVEL": "debug",
    })
    assert settings.build.epsilon == 0.25
    # env wins over the file
    assert settings.build.seed == 16
    assert settings.gen.seed == 16
    assert settings.build.max_build_attempts == 8
    assert settings.query.threads == 4
    assert settings.log_level == "DEBUG"


def test_invalid_values(tmp_path):
    with pytest.raises(ParameterError, match="ALCS_SEED"):
        load_settings({"ALCS_SEED": "seven"})
    bad = tmp_path / "bad.yaml"
    bad.write_text("build:\n  epsilon: 1.5\n")
    with pytest.raises(ParameterError):
        load_settings({"ALCS_CONFIG": str(bad)})
    not_a_map = tmp_path / "list.yaml"
    not_a_map.write_text("- 1\n- 2\n")
    with pytest.raises(ParameterError):
        load_settings({"ALCS_CONFIG": str(not_a_map)})
