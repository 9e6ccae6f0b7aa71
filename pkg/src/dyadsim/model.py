"""Core network model: site parameters, coupling matrices, and the
right-hand side of the condensate-centre amplitude equations.

Each site i carries a complex amplitude psi_i = sqrt(rho_i) exp(i theta_i).
The vector field is

    dpsi_i/dt = -i |psi_i|^2 psi_i - psi_i
                + (1 - i g_i) [ gamma_i / (1 + xi |psi_i|^2) psi_i
                                + sum_{j != i} J_ij psi_j ]

with per-site pumping gamma_i and blueshift g_i, a shared saturation scale
xi, and a symmetric, zero-diagonal coupling matrix J.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

DIVERGENCE_BOUND = 1.0e6


@dataclass(frozen=True)
class SiteParams:
    """Per-site pumping strength and blueshift."""

    gamma: float
    g: float

    def __post_init__(self):
        if not self.gamma >= 0.0:
            raise ConfigurationError(f"gamma must be >= 0, got {self.gamma}")


@dataclass(frozen=True)
class CouplingMatrix:
    """Symmetric, zero-diagonal coupling matrix with |J_ij| < 1."""

    entries: np.ndarray

    def __post_init__(self):
        j = np.asarray(self.entries, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ConfigurationError(f"coupling matrix must be square, got shape {j.shape}")
        if not np.allclose(j, j.T, rtol=0.0, atol=1e-12):
            raise ConfigurationError("coupling matrix must be symmetric")
        if np.any(np.abs(np.diagonal(j)) > 0.0):
            raise ConfigurationError("coupling matrix must have zero diagonal")
        if np.any(np.abs(j) >= 1.0):
            raise ConfigurationError("all |J_ij| must be < 1")
        object.__setattr__(self, "entries", j)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class IntegrationControls:
    """Tolerances and detection thresholds for time integration.

    Defaults are conservative: adaptive-step local error 1e-9, a 5-time-unit
    trailing window in which every density and relative phase must vary by
    less than stationarity_tol before a steady state is declared, and a 5%
    density-contrast threshold below which a dyad is left unresolved.
    """

    dt_init: float = 1e-3
    rel_tol: float = 1e-9
    abs_tol: float = 1e-9
    t_max: float = 2000.0
    stationarity_window: float = 5.0
    stationarity_tol: float = 1e-7
    asym_threshold: float = 0.05

    def __post_init__(self):
        for name in ("dt_init", "rel_tol", "abs_tol", "t_max",
                     "stationarity_window", "stationarity_tol", "asym_threshold"):
            if not getattr(self, name) > 0.0:
                raise ConfigurationError(f"{name} must be > 0")
        if not self.asym_threshold < 1.0:
            raise ConfigurationError("asym_threshold must be < 1")


@dataclass(frozen=True)
class NetworkConfig:
    """Full specification of one simulated network."""

    sites: tuple[SiteParams, ...]
    coupling: CouplingMatrix
    xi: float
    integration: IntegrationControls = field(default_factory=IntegrationControls)

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(self.sites))
        if len(self.sites) != self.coupling.n:
            raise ConfigurationError(
                f"{len(self.sites)} sites but coupling matrix is {self.coupling.n}x{self.coupling.n}")
        if not self.xi > 0.0:
            raise ConfigurationError("xi must be > 0")

    @property
    def n(self) -> int:
        return len(self.sites)

    @property
    def gammas(self) -> np.ndarray:
        return np.array([s.gamma for s in self.sites])

    @property
    def gs(self) -> np.ndarray:
        return np.array([s.g for s in self.sites])


@dataclass(frozen=True)
class NetworkState:
    """Vector of complex site amplitudes plus simulation clock."""

    amplitudes: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim != 1:
            raise ConfigurationError("amplitudes must be a 1-D vector")
        if not np.all(np.isfinite(amp.view(float))):
            raise ConfigurationError("amplitudes must be finite")
        if self.t < 0.0:
            raise ConfigurationError("t must be >= 0")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0]


def rhs(config: NetworkConfig, state: NetworkState) -> np.ndarray:
    """Time derivative of the amplitude vector. Pure, no mutation."""
    psi = state.amplitudes
    if psi.shape[0] != config.n:
        raise ConfigurationError(
            f"state has {psi.shape[0]} sites, config expects {config.n}")
    rho = np.abs(psi) ** 2
    gain = config.gammas / (1.0 + config.xi * rho)
    coupled = config.coupling.entries @ psi  # zero diagonal makes this the j != i sum
    return -1j * rho * psi - psi + (1.0 - 1j * config.gs) * (gain * psi + coupled)


def densities(state: NetworkState) -> np.ndarray:
    """Per-site occupations rho_i = |psi_i|^2."""
    return np.abs(state.amplitudes) ** 2


def relative_phases(state: NetworkState) -> np.ndarray:
    """Phases of sites 2..N relative to site 1, wrapped to (-pi, pi]."""
    psi = state.amplitudes
    ph = np.angle(psi[1:] * np.conj(psi[0]))
    # np.angle returns [-pi, pi]; fold -pi onto +pi
    ph[ph == -np.pi] = np.pi
    return ph
