import numpy as np
import pytest

from config.settings import verify_config


@pytest.fixture(autouse=True)
def quiet_progress(monkeypatch):
    monkeypatch.setattr(verify_config, "SHOW_PROGRESS", False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def points():
    """points(group, count, seed=7) → seeded элементы группы."""
    from core.groups import sample_points

    def make(group, count, seed=7):
        return sample_points(group, seed, count)

    return make
