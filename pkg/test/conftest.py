"""Shared fixtures."""
import pytest

from alcs.index_builder import build_index


@pytest.fixture(scope="session")
def abaab_index():
    """The worked example: T = "abaab", epsilon = 0.5."""
    return build_index(b"abaab", 0.5, seed=1)
