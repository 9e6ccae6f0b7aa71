import numpy as np
import pytest

from dyadsim import IntegrationControls, NetworkConfig, SiteParams, dyad

# Parameters used throughout the figure campaigns
FAIR_COIN = {"J": 0.55, "gamma": 2.8, "g": 0.5, "xi": 5.0 / 3.0}
CALIB = {"J": 0.45, "gamma": 1.8, "g": 0.4, "xi": 2.0}


@pytest.fixture
def fair_coin_config() -> NetworkConfig:
    return dyad(FAIR_COIN["J"], SiteParams(FAIR_COIN["gamma"], FAIR_COIN["g"]),
                FAIR_COIN["xi"])


@pytest.fixture
def calib_config() -> NetworkConfig:
    return dyad(CALIB["J"], SiteParams(CALIB["gamma"], CALIB["g"]), CALIB["xi"])


def random_valid_dyad_params(rng: np.random.Generator) -> tuple[float, float, float, float]:
    """(J, gamma0, g, xi) with a condensed equal-occupancy state."""
    J = rng.uniform(0.05, 0.9) * rng.choice([-1.0, 1.0])
    gamma0 = rng.uniform(1.0 - abs(J) + 0.2, 3.0)
    g = rng.uniform(-1.0, 1.0)
    xi = rng.uniform(0.3, 3.0)
    return float(J), float(gamma0), float(g), float(xi)
