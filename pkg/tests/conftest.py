"""
Pytest configuration and fixtures for GCWSNet tests.
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

# Set test environment variables
os.environ["GCWSNET_ENV"] = "test"
os.environ.pop("GCWSNET_WORKERS", None)
os.environ.pop("GCWSNET_HASH_CHUNK", None)

# Reset settings singleton so test env vars take effect
import gcwsnet.config.settings as _cfg  # noqa: E402

_cfg._settings = None

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def gaussians_train() -> Path:
    """200 rows, 4 features, labels 1 / 2 with class means +1.5 / -1.5."""
    return FIXTURES / "two_gaussians_train.libsvm"


@pytest.fixture
def gaussians_test() -> Path:
    return FIXTURES / "two_gaussians_test.libsvm"


@pytest.fixture
def pendigits_like() -> Path:
    """60 rows, 16 integer features up to 9000, 3 classes."""
    return FIXTURES / "pendigits_like.libsvm"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
