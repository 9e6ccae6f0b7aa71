"""Time integration, steady-state detection, and noise-seeded trials.

A steady state here means a rotating-frame fixed point: densities and
relative phases freeze while every amplitude rotates at the common rate mu
(i psidot_i = mu psi_i). Detection therefore watches observables, never raw
amplitudes.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import _stepper
from ._stepper import DP_A, DP_B5, DP_E
from .errors import ConfigurationError, DivergedError
from .model import NetworkConfig, NetworkState, densities, relative_phases

DEFAULT_NOISE_AMPLITUDE = 2e-4


class NoiseDistribution(enum.Enum):
    UNIFORM_DISK = "uniform_disk"
    COMPLEX_GAUSSIAN = "complex_gaussian"


@dataclass(frozen=True)
class NoiseSpec:
    """Low-level classical noise used for initial conditions.

    ComplexGaussian draws real and imaginary parts i.i.d. N(0, amplitude^2/2)
    per site; UniformDisk draws uniformly from the complex disk of radius
    `amplitude`. Amplitudes must stay far below steady occupations (~O(1))
    so trials start in the linear-growth regime.
    """

    amplitude: float = DEFAULT_NOISE_AMPLITUDE
    distribution: NoiseDistribution = NoiseDistribution.COMPLEX_GAUSSIAN
    seed: int = 0

    def __post_init__(self):
        if not self.amplitude > 0.0:
            raise ConfigurationError("noise amplitude must be > 0")

    def sample(self, n: int, seed: Optional[int] = None) -> np.ndarray:
        """Draw one initial amplitude vector. `seed` overrides self.seed."""
        rng = np.random.default_rng(self.seed if seed is None else seed)
        if self.distribution is NoiseDistribution.COMPLEX_GAUSSIAN:
            z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            return z * (self.amplitude / np.sqrt(2.0))
        u = rng.random(n)
        phase = rng.random(n) * 2.0 * np.pi
        return self.amplitude * np.sqrt(u) * np.exp(1j * phase)


class TrialKind(enum.Enum):
    STEADY = "steady"
    NON_STATIONARY = "non_stationary"
    DIVERGED = "diverged"


@dataclass(frozen=True)
class TrialOutcome:
    """Classification of one noise-seeded run.

    `bits` is None unless the trial reached a steady state and every watched
    dyad resolved (density contrast at or above asym_threshold). `mu` is the
    extracted chemical potential, valid when steady.
    """

    kind: TrialKind
    final_densities: np.ndarray
    final_relative_phases: np.ndarray
    mu: float
    bits: Optional[tuple[int, ...]]
    elapsed_t: float
    seed: int


class Trajectory:
    """Single-owner adaptive integration of one network from one state.

    Not thread-safe; run independent trials on independent Trajectory (or
    run_trial) instances instead.
    """

    def __init__(self, config: NetworkConfig, initial: NetworkState):
        if initial.n != config.n:
            raise ConfigurationError("initial state size does not match config")
        self.config = config
        self._psi = initial.amplitudes.astype(complex).copy()
        self._t = float(initial.t)
        self._dt = config.integration.dt_init
        self._gammas = config.gammas
        self._gs = config.gs
        self._jmat = config.coupling.entries
        self._k = np.zeros((7, config.n), dtype=complex)
        self._y = np.zeros(config.n, dtype=complex)

    @property
    def t(self) -> float:
        return self._t

    @property
    def state(self) -> NetworkState:
        return NetworkState(self._psi.copy(), self._t)

    def advance_to(self, t_target: float) -> None:
        """Integrate up to exactly t_target; raises DivergedError on blow-up."""
        ic = self.config.integration
        self._t, self._dt, status = _stepper.advance_to(
            self._psi, self._t, self._dt, t_target,
            self._gammas, self._gs, self._jmat, self.config.xi,
            ic.rel_tol, ic.abs_tol, DP_A, DP_E, self._k, self._y)
        if status == _stepper.DIVERGED:
            raise DivergedError(f"trajectory diverged at t={self._t:.3f}")

    def step_until(self, predicate: Callable[[NetworkState], bool],
                   check_dt: float = 0.5) -> bool:
        """Advance in check_dt hops until predicate(state) or t_max.

        Returns True when the predicate fired, False on timeout.
        """
        ic = self.config.integration
        if predicate(self.state):
            return True
        while self._t < ic.t_max - 1e-12:
            self.advance_to(min(self._t + check_dt, ic.t_max))
            if predicate(self.state):
                return True
        return False

    def run_to_steady(self, window: Optional[float] = None,
                      tol: Optional[float] = None) -> tuple[int, float]:
        """Integrate until steady or t_max. Returns (status, mu)."""
        ic = self.config.integration
        status, self._t, mu = _stepper.run_to_steady(
            self._psi, self._t, self._gammas, self._gs, self._jmat,
            self.config.xi, ic.rel_tol, ic.abs_tol, self._dt, ic.t_max,
            ic.stationarity_window if window is None else window,
            ic.stationarity_tol if tol is None else tol, DP_A, DP_E)
        return status, mu


def integrate(config: NetworkConfig, initial: NetworkState) -> Trajectory:
    """Start an adaptive trajectory from `initial`."""
    return Trajectory(config, initial)


def fixed_step(config: NetworkConfig, state: NetworkState, dt: float) -> NetworkState:
    """One fixed-size 5th-order step, no error control (order checks only)."""
    out = np.zeros(config.n, dtype=complex)
    _stepper.fixed_step(state.amplitudes.astype(complex), config.gammas,
                        config.gs, config.coupling.entries, config.xi,
                        dt, DP_A, DP_B5, out)
    return NetworkState(out, state.t + dt)


@dataclass(frozen=True)
class SteadyInfo:
    mu: float
    t: float


def detect_steady(trajectory: Trajectory,
                  window: Optional[float] = None,
                  tol: Optional[float] = None) -> Optional[SteadyInfo]:
    """Drive a trajectory until a rotating-frame steady state is reached.

    Returns SteadyInfo on detection, None (not yet) if t_max passes first.
    Divergence raises DivergedError.
    """
    status, mu = trajectory.run_to_steady(window=window, tol=tol)
    if status == _stepper.DIVERGED:
        raise DivergedError("trajectory diverged during steady-state detection")
    if status == _stepper.STEADY:
        return SteadyInfo(mu=mu, t=trajectory.t)
    return None


def classify_bits(rho: np.ndarray, dyads: Sequence[tuple[int, int]],
                  asym_threshold: float) -> Optional[tuple[int, ...]]:
    """Per-dyad bits: 1 when the lower-index site is denser.

    Returns None when any dyad's density contrast falls below the threshold
    (unresolved) or carries no density at all.
    """
    bits = []
    for (i, j) in dyads:
        if i >= j:
            raise ConfigurationError(f"dyad indices must satisfy i < j, got ({i}, {j})")
        total = rho[i] + rho[j]
        if total < 1e-12:
            return None
        contrast = abs(rho[i] - rho[j]) / total
        if contrast < asym_threshold:
            return None
        bits.append(1 if rho[i] > rho[j] else 0)
    return tuple(bits)


def run_trial(config: NetworkConfig, dyads: Sequence[tuple[int, int]],
              noise: NoiseSpec, seed: Optional[int] = None,
              initial: Optional[NetworkState] = None) -> TrialOutcome:
    """One noise-seeded run: seed, integrate to steady or t_max, classify.

    `seed` overrides noise.seed for ensemble fan-out; `initial` bypasses
    noise seeding entirely (gauge and symmetry tests).
    """
    used = set()
    for (i, j) in dyads:
        if not (0 <= i < j < config.n):
            raise ConfigurationError(f"dyad ({i}, {j}) out of range for N={config.n}")
        if i in used or j in used:
            raise ConfigurationError("dyad index pairs must be disjoint")
        used.update((i, j))
    eff_seed = noise.seed if seed is None else seed
    if initial is None:
        psi0 = noise.sample(config.n, seed=eff_seed)
        initial = NetworkState(psi0, 0.0)
    traj = Trajectory(config, initial)
    status, mu = traj.run_to_steady()
    state = traj.state
    rho = densities(state)
    relph = relative_phases(state)
    if status == _stepper.DIVERGED:
        kind, bits, mu = TrialKind.DIVERGED, None, float("nan")
    elif status == _stepper.NONSTATIONARY:
        kind, bits, mu = TrialKind.NON_STATIONARY, None, float("nan")
    else:
        kind = TrialKind.STEADY
        bits = classify_bits(rho, dyads, config.integration.asym_threshold)
    return TrialOutcome(kind=kind, final_densities=rho,
                        final_relative_phases=relph, mu=mu, bits=bits,
                        elapsed_t=traj.t, seed=eff_seed)
