"""Constructors for the named network geometries.

Site ordering convention, fixed once for encoding stability: dyad k occupies
sites (2k, 2k+1); the even-index ("upper") site is bit-significant, and a
dyad reads 1 when its upper site carries the higher density.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigurationError
from .model import CouplingMatrix, IntegrationControls, NetworkConfig, SiteParams


class TetradShape(enum.Enum):
    SQUARE = "square"
    CROSSED = "crossed"


class LinkKind(enum.Enum):
    LATERAL = "lateral"
    CROSSED = "crossed"


@dataclass(frozen=True)
class InterDyadLink:
    """Weak coupling of strength alpha*J across the gap after dyad `position`."""

    position: int
    kind: LinkKind
    alpha: float

    def __post_init__(self):
        if self.alpha < 0.0:
            raise ConfigurationError("alpha must be >= 0")


@dataclass(frozen=True)
class SiteBoost:
    """Multiplicative pumping boost pinning one dyad's orientation."""

    site: int
    factor: float

    def __post_init__(self):
        if not self.factor > 0.0:
            raise ConfigurationError("boost factor must be > 0")
        if not 0.8 <= self.factor <= 1.3:
            warnings.warn(f"boost factor {self.factor} is far from 1; "
                          "orientation pinning normally uses factors near 1.05",
                          stacklevel=3)


@dataclass(frozen=True)
class ChainSpec:
    """Chain of dyads with optional inter-dyad links and pump boosts."""

    n_dyads: int
    intra_coupling: float
    inter_links: tuple[InterDyadLink, ...] = ()
    boosted_sites: tuple[SiteBoost, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inter_links", tuple(self.inter_links))
        object.__setattr__(self, "boosted_sites", tuple(self.boosted_sites))
        if self.n_dyads < 1:
            raise ConfigurationError("n_dyads must be >= 1")
        if not abs(self.intra_coupling) < 1.0:
            raise ConfigurationError("|intra_coupling| must be < 1")
        for link in self.inter_links:
            if not 0 <= link.position < self.n_dyads - 1:
                raise ConfigurationError(
                    f"link position {link.position} out of range for {self.n_dyads} dyads")
            if not link.alpha * abs(self.intra_coupling) < 1.0:
                raise ConfigurationError("alpha * |J| must be < 1")
        for boost in self.boosted_sites:
            if not 0 <= boost.site < 2 * self.n_dyads:
                raise ConfigurationError(f"boost site {boost.site} out of range")

    @property
    def n_sites(self) -> int:
        return 2 * self.n_dyads


def _site_list(n: int, base: SiteParams,
               overrides: Optional[dict[int, SiteParams]] = None) -> list[SiteParams]:
    sites = [base] * n
    for idx, params in (overrides or {}).items():
        if not 0 <= idx < n:
            raise ConfigurationError(f"site override index {idx} out of range")
        sites[idx] = params
    return sites


def dyad(J: float, base: SiteParams, xi: float,
         overrides: Optional[dict[int, SiteParams]] = None,
         integration: Optional[IntegrationControls] = None) -> NetworkConfig:
    """Two-site network with symmetric coupling J; dyads = [(0, 1)].

    Per-site overrides express calibration and imperfection studies, e.g.
    a blueshift perturbation g -> g + eps on site 1 with a compensating
    pump gamma-tilde.
    """
    if not abs(J) < 1.0:
        raise ConfigurationError("|J| must be < 1")
    jmat = np.zeros((2, 2))
    jmat[0, 1] = jmat[1, 0] = J
    return NetworkConfig(sites=tuple(_site_list(2, base, overrides)),
                         coupling=CouplingMatrix(jmat), xi=xi,
                         integration=integration or IntegrationControls())


def tetrad(J: float, alpha: float, shape: TetradShape, base: SiteParams,
           xi: float,
           integration: Optional[IntegrationControls] = None) -> NetworkConfig:
    """Two dyads (0,1) and (2,3) cross-linked with weak coupling alpha*J.

    Square links (0,2) and (1,3); Crossed links (0,3) and (1,2). The two
    shapes are related by relabelling sites 2 and 3.
    """
    if not abs(J) < 1.0:
        raise ConfigurationError("|J| must be < 1")
    if alpha < 0.0:
        raise ConfigurationError("alpha must be >= 0")
    jmat = np.zeros((4, 4))
    jmat[0, 1] = jmat[1, 0] = J
    jmat[2, 3] = jmat[3, 2] = J
    if shape is TetradShape.SQUARE:
        pairs = ((0, 2), (1, 3))
    else:
        pairs = ((0, 3), (1, 2))
    for (i, j) in pairs:
        jmat[i, j] = jmat[j, i] = alpha * J
    return NetworkConfig(sites=tuple(_site_list(4, base)),
                         coupling=CouplingMatrix(jmat), xi=xi,
                         integration=integration or IntegrationControls())


def chain(spec: ChainSpec, base: SiteParams, xi: float,
          integration: Optional[IntegrationControls] = None) -> NetworkConfig:
    """Chain of n_dyads dyads; dyad k occupies sites (2k, 2k+1).

    A lateral link at gap k couples (2k, 2k+2) and (2k+1, 2k+3); a crossed
    link couples (2k, 2k+3) and (2k+1, 2k+2). Boosted sites multiply gamma.
    """
    n = spec.n_sites
    jmat = np.zeros((n, n))
    J = spec.intra_coupling
    for k in range(spec.n_dyads):
        jmat[2 * k, 2 * k + 1] = jmat[2 * k + 1, 2 * k] = J
    for link in spec.inter_links:
        k = link.position
        if link.kind is LinkKind.LATERAL:
            pairs = ((2 * k, 2 * k + 2), (2 * k + 1, 2 * k + 3))
        else:
            pairs = ((2 * k, 2 * k + 3), (2 * k + 1, 2 * k + 2))
        for (i, j) in pairs:
            jmat[i, j] = jmat[j, i] = link.alpha * J
    sites = [base] * n
    for boost in spec.boosted_sites:
        old = sites[boost.site]
        sites[boost.site] = SiteParams(gamma=old.gamma * boost.factor, g=old.g)
    return NetworkConfig(sites=tuple(sites), coupling=CouplingMatrix(jmat),
                         xi=xi, integration=integration or IntegrationControls())


def chain_dyads(n_dyads: int) -> list[tuple[int, int]]:
    """Index pairs watched by trials on a chain (or tetrad with n_dyads=2)."""
    return [(2 * k, 2 * k + 1) for k in range(n_dyads)]
