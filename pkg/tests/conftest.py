import sys

import pytest
from loguru import logger

from models import EffectiveParams


@pytest.fixture(autouse=True)
def _stderr_sink():
    # the CLI swaps the sink for CliRunner's stream; put a live one back
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


def effective(**overrides) -> EffectiveParams:
    values = dict(g1=1.0, g2=1.0, omega_prime=1e5, kappa1=1.0, kappa2=1.0, n_atoms=10_000)
    values.update(overrides)
    return EffectiveParams(**values)


@pytest.fixture
def large_detuning() -> EffectiveParams:
    """κ = g, ω′ = 10⁵g, N = 10⁴: g²N/ω′ = 0.1."""
    return effective()


@pytest.fixture
def strong_coupling() -> EffectiveParams:
    """κ = 10g, ω′ = 10⁴g, N = 10⁴: g²N/ω′ = 1."""
    return effective(omega_prime=1e4, kappa1=10.0, kappa2=10.0)


@pytest.fixture
def empty_cavity() -> EffectiveParams:
    return effective(g1=0.0, g2=0.0)
