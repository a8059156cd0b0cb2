import pytest

from fracprey import ModelParams

# shared baseline parameter set; the three complexity levels exercise the
# three qualitatively different regimes (predator-free attractor, stable
# coexistence, order-dependent coexistence)
BASE = dict(r=2.65, K=898.0, alpha=0.045, h=0.0437, theta=0.215, d=1.06)


@pytest.fixture
def high_complexity():
    return ModelParams(c=0.86, **BASE)


@pytest.fixture
def mid_complexity():
    return ModelParams(c=0.45, **BASE)


@pytest.fixture
def low_complexity():
    return ModelParams(c=0.05, **BASE)
