"""Gain-dissipative condensate dyad networks.

Simulation of coupled nonequilibrium condensate centres whose spontaneous
density asymmetry amplifies low-level noise into macroscopic binary
outcomes, with calibration analytics, ensemble statistics, and a chain
random-number stream with built-in validation.
"""

__version__ = "0.1.0"

from .model import (CouplingMatrix, IntegrationControls, NetworkConfig,
                    NetworkState, SiteParams, densities, relative_phases, rhs)
from .dynamics import (NoiseDistribution, NoiseSpec, TrialKind, TrialOutcome,
                       Trajectory, detect_steady, integrate, run_trial)
from .topology import (ChainSpec, InterDyadLink, LinkKind, SiteBoost,
                       TetradShape, chain, chain_dyads, dyad, tetrad)

__all__ = [
    "CouplingMatrix", "IntegrationControls", "NetworkConfig", "NetworkState",
    "SiteParams", "densities", "relative_phases", "rhs",
    "NoiseDistribution", "NoiseSpec", "TrialKind", "TrialOutcome",
    "Trajectory", "detect_steady", "integrate", "run_trial",
    "ChainSpec", "InterDyadLink", "LinkKind", "SiteBoost", "TetradShape",
    "chain", "chain_dyads", "dyad", "tetrad",
]
