"""Pytest fixtures for leibniz-nf tests."""

import os
from collections.abc import Generator
from unittest.mock import patch

import pytest

from leibniz_nf.catalog import make_nf, make_solvable_nf
from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import AlgebraTable, direct_sum
from leibniz_nf.recognition.classify import fingerprint_cache


@pytest.fixture(autouse=True)
def clear_caches() -> Generator[None, None, None]:
    """Clear the settings and fingerprint caches around every test."""
    get_settings.cache_clear()
    fingerprint_cache.clear()

    yield

    get_settings.cache_clear()
    fingerprint_cache.clear()


@pytest.fixture
def mock_env_vars() -> Generator[dict[str, str], None, None]:
    """Set up environment overrides for testing."""
    env_vars = {
        "LEIBNIZ_LOG_LEVEL": "DEBUG",
        "LEIBNIZ_FUZZ_TRIALS": "5",
        "LEIBNIZ_FUZZ_SEED": "7",
    }
    with patch.dict(os.environ, env_vars, clear=False):
        get_settings.cache_clear()
        yield env_vars


@pytest.fixture
def nf4() -> AlgebraTable:
    """Null-filiform algebra of dimension 4."""
    return make_nf(4)


@pytest.fixture
def solvable_nf3() -> AlgebraTable:
    """Solvable extension of NF_3, dimension 4."""
    return make_solvable_nf(3)


@pytest.fixture
def nf2_plus_nf3() -> AlgebraTable:
    """Direct sum NF_2 + NF_3, a nilpotent algebra that is not null-filiform."""
    return direct_sum(make_nf(2), make_nf(3))


@pytest.fixture
def heisenberg() -> AlgebraTable:
    """Three-dimensional Heisenberg Lie algebra ``[e1, e2] = e3 = -[e2, e1]``."""
    return AlgebraTable.from_constants(3, {(0, 1, 2): 1, (1, 0, 2): -1})


@pytest.fixture
def sl2() -> AlgebraTable:
    """``sl_2`` in the basis ``(h, e, f)``; simple, hence not solvable."""
    return AlgebraTable.from_constants(
        3,
        {
            (0, 1, 1): 2,
            (1, 0, 1): -2,
            (0, 2, 2): -2,
            (2, 0, 2): 2,
            (1, 2, 0): 1,
            (2, 1, 0): -1,
        },
    )
