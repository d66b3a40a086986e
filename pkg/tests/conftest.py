import os

import numpy as np
import pytest

from sloccsim.noise import BathParams


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Isole les tests des variables SLOCC_* de l'environnement."""
    for key in list(os.environ):
        if key.startswith("SLOCC_"):
            monkeypatch.delenv(key)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def bath():
    return BathParams(1.0, 3.0)
