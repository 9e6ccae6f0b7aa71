"""Monte-Carlo campaigns over noise seeds.

Campaigns derive trial seeds as base_seed + k, so every statistic is
bitwise reproducible and independent of execution order or thread count.
"""
from __future__ import annotations

import enum
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .dynamics import NoiseSpec, TrialKind, TrialOutcome, run_trial
from .errors import InsufficientPointsError, NoRootError
from .model import IntegrationControls, NetworkConfig, SiteParams
from .topology import TetradShape, chain_dyads, dyad, tetrad


@dataclass(frozen=True)
class EnsembleStats:
    """Aggregated outcome counts for one campaign.

    state_counts maps the integer read off the resolved dyad bits (dyad 0
    most significant) to its count; counts sum to
    n_trials - n_unresolved - n_nonstationary - n_diverged.
    """

    n_trials: int
    n_unresolved: int
    n_nonstationary: int
    n_diverged: int
    state_counts: dict[int, int]
    p1_per_dyad: np.ndarray
    sigma_per_dyad: np.ndarray
    stderr_per_dyad: np.ndarray
    bias: Optional[float] = None

    @property
    def n_resolved(self) -> int:
        return sum(self.state_counts.values())


def bits_to_state(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def _aggregate(outcomes: Sequence[TrialOutcome], n_dyads: int) -> EnsembleStats:
    counts: dict[int, int] = {}
    ones = np.zeros(n_dyads)
    n_unresolved = n_nonstationary = n_diverged = 0
    for out in outcomes:
        if out.kind is TrialKind.DIVERGED:
            n_diverged += 1
        elif out.kind is TrialKind.NON_STATIONARY:
            n_nonstationary += 1
        elif out.bits is None:
            n_unresolved += 1
        else:
            state = bits_to_state(out.bits)
            counts[state] = counts.get(state, 0) + 1
            ones += np.asarray(out.bits)
    n_resolved = sum(counts.values())
    if n_resolved > 0:
        p1 = ones / n_resolved
        sigma = np.sqrt(p1 * (1.0 - p1))
        stderr = np.sqrt(p1 * (1.0 - p1) / n_resolved)
    else:
        p1 = np.full(n_dyads, np.nan)
        sigma = np.full(n_dyads, np.nan)
        stderr = np.full(n_dyads, np.nan)
    bias = None
    if n_dyads == 2 and n_resolved > 0:
        aligned = counts.get(0b00, 0) + counts.get(0b11, 0)
        disaligned = counts.get(0b01, 0) + counts.get(0b10, 0)
        bias = disaligned / aligned if aligned > 0 else float("inf")
    return EnsembleStats(n_trials=len(outcomes), n_unresolved=n_unresolved,
                         n_nonstationary=n_nonstationary, n_diverged=n_diverged,
                         state_counts=counts, p1_per_dyad=p1,
                         sigma_per_dyad=sigma, stderr_per_dyad=stderr, bias=bias)


def run_trials(config: NetworkConfig, dyads: Sequence[tuple[int, int]],
               n_trials: int, base_seed: int, noise: NoiseSpec,
               threads: int = 1) -> list[TrialOutcome]:
    """Trials with seeds base_seed + k, k = 0..n-1, in seed order."""
    seeds = [base_seed + k for k in range(n_trials)]
    if threads <= 1:
        return [run_trial(config, dyads, noise, seed=s) for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda s: run_trial(config, dyads, noise, seed=s),
                             seeds))


def run_ensemble(config: NetworkConfig, dyads: Sequence[tuple[int, int]],
                 n_trials: int, base_seed: int,
                 noise: Optional[NoiseSpec] = None,
                 threads: int = 1) -> EnsembleStats:
    """Aggregate n_trials noise-seeded trials into EnsembleStats."""
    if n_trials < 1:
        raise InsufficientPointsError("n_trials must be >= 1")
    noise = noise or NoiseSpec()
    outcomes = run_trials(config, dyads, n_trials, base_seed, noise, threads)
    return _aggregate(outcomes, len(dyads))


@dataclass(frozen=True)
class CalibrationResult:
    """p1 and sigma curves over an r_g grid at fixed r_gamma, plus the
    spline-extracted fair-coin crossings."""

    r_gamma: float
    p1_curve: list[tuple[float, float]]
    sigma_curve: list[tuple[float, float]]
    r_g_star_p: float
    r_g_star_sigma: float


def _spline_root(xs: np.ndarray, ys: np.ndarray, level: float,
                 allow_peak_fallback: bool = False) -> float:
    """Root of a natural cubic spline through (xs, ys) crossing `level`.

    With allow_peak_fallback, a curve that only touches the level from below
    (the sigma = 0.5 tangency) resolves to the spline's interior maximum.
    """
    spline = CubicSpline(xs, ys, bc_type="natural")
    roots = spline.solve(level, extrapolate=False)
    if len(roots) > 0:
        # for a monotone transition there is one; otherwise take the median
        return float(np.sort(roots)[len(roots) // 2])
    if allow_peak_fallback:
        droots = spline.derivative().solve(0.0, extrapolate=False)
        if len(droots) > 0:
            vals = spline(droots)
            best = droots[int(np.argmax(vals))]
            if spline(best) > level - 0.05:
                return float(best)
    raise NoRootError(f"curve never crosses {level} within the scanned grid")


def calibration_dyad(J: float, gamma0: float, g: float, xi: float,
                     r_gamma: float, r_g: float,
                     integration: Optional[IntegrationControls] = None,
                     ) -> NetworkConfig:
    """Dyad with the calibrated site's parameters scaled by (r_gamma, r_g).

    The overrides sit on the upper site (index 0), so raising r_g pulls
    density onto the upper site and p1 increases with r_g.
    """
    base = SiteParams(gamma=gamma0, g=g)
    override = SiteParams(gamma=gamma0 * r_gamma, g=g * r_g)
    return dyad(J, base, xi, overrides={0: override}, integration=integration)


def calibration_sweep(J: float, gamma0: float, g: float, xi: float,
                      r_gamma: float, r_g_grid: Sequence[float],
                      n_trials_per_point: int, base_seed: int = 0,
                      noise: Optional[NoiseSpec] = None,
                      integration: Optional[IntegrationControls] = None,
                      threads: int = 1) -> CalibrationResult:
    """Sweep r_g at fixed r_gamma and locate the p1 = 0.5 and sigma = 0.5
    crossings with natural cubic splines."""
    r_gs = np.asarray(sorted(r_g_grid), dtype=float)
    if r_gs.size < 4:
        raise InsufficientPointsError("need >= 4 r_g grid points for a cubic spline")
    noise = noise or NoiseSpec()
    p1s = []
    sigmas = []
    for idx, r_g in enumerate(r_gs):
        config = calibration_dyad(J, gamma0, g, xi, r_gamma, r_g, integration)
        stats = run_ensemble(config, [(0, 1)], n_trials_per_point,
                             base_seed + idx * n_trials_per_point, noise, threads)
        p1s.append(float(stats.p1_per_dyad[0]))
        sigmas.append(float(stats.sigma_per_dyad[0]))
    p1s = np.asarray(p1s)
    sigmas = np.asarray(sigmas)
    root_p = _spline_root(r_gs, p1s, 0.5)
    root_sigma = _spline_root(r_gs, sigmas, 0.5, allow_peak_fallback=True)
    return CalibrationResult(r_gamma=r_gamma,
                             p1_curve=list(zip(r_gs.tolist(), p1s.tolist())),
                             sigma_curve=list(zip(r_gs.tolist(), sigmas.tolist())),
                             r_g_star_p=root_p, r_g_star_sigma=root_sigma)


@dataclass(frozen=True)
class LocusFit:
    """Least-squares line r_gamma = slope * r_g + intercept through the
    critical points, with standard errors."""

    points: list[tuple[float, float]]
    slope: float
    intercept: float
    slope_stderr: float
    intercept_stderr: float
    curves: list[CalibrationResult] = field(default_factory=list)


def critical_locus(J: float, gamma0: float, g: float, xi: float,
                   r_gammas: Sequence[float], n_trials_per_point: int,
                   r_g_grids: Optional[Sequence[Sequence[float]]] = None,
                   base_seed: int = 0, noise: Optional[NoiseSpec] = None,
                   integration: Optional[IntegrationControls] = None,
                   threads: int = 1, grid_halfwidth: float = 0.012,
                   grid_points: int = 9) -> LocusFit:
    """Fit the (r_g*, r_gamma*) locus over several r_gamma values.

    Default r_g grids are centred on the first-order prediction
    r_g* = 1 + (1 - r_gamma) / |analytic slope| since the p1 transition is
    narrow compared to the locus extent.
    """
    r_gammas = list(r_gammas)
    if len(r_gammas) < 2:
        raise InsufficientPointsError("need >= 2 r_gamma values for a locus fit")
    from .perturbation import calibration_slope
    slope_pred = calibration_slope(J, g)
    points = []
    curves = []
    for i, r_gamma in enumerate(r_gammas):
        if r_g_grids is not None:
            grid = list(r_g_grids[i])
        else:
            center = 1.0 + (1.0 - r_gamma) / abs(slope_pred)
            grid = list(np.linspace(center - grid_halfwidth,
                                    center + grid_halfwidth, grid_points))
        try:
            result = calibration_sweep(
                J, gamma0, g, xi, r_gamma, grid, n_trials_per_point,
                base_seed + i * n_trials_per_point * len(grid), noise,
                integration, threads)
        except NoRootError as exc:
            warnings.warn(f"r_gamma = {r_gamma}: {exc}; dropped from locus",
                          stacklevel=2)
            continue
        curves.append(result)
        points.append((result.r_g_star_p, r_gamma))
    if len(points) < 2:
        raise InsufficientPointsError("fewer than 2 usable critical points")
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    coeffs, cov = np.polyfit(xs, ys, 1, cov=True)
    errs = np.sqrt(np.diag(cov))
    return LocusFit(points=points, slope=float(coeffs[0]),
                    intercept=float(coeffs[1]), slope_stderr=float(errs[0]),
                    intercept_stderr=float(errs[1]), curves=curves)


@dataclass(frozen=True)
class TetradBiasPoint:
    alpha: float
    stats: EnsembleStats
    bias: float
    bias_infinite: bool


def tetrad_bias(J: float, alphas: Sequence[float], shape: TetradShape,
                base: SiteParams, xi: float, n_trials: int, base_seed: int = 0,
                noise: Optional[NoiseSpec] = None,
                integration: Optional[IntegrationControls] = None,
                threads: int = 1) -> list[TetradBiasPoint]:
    """Bias B = p(dis-aligned) / p(aligned) of a tetrad as a function of the
    inter-dyad coupling fraction alpha."""
    points = []
    for i, alpha in enumerate(sorted(alphas)):
        config = tetrad(J, alpha, shape, base, xi, integration)
        stats = run_ensemble(config, chain_dyads(2), n_trials,
                             base_seed + i * n_trials, noise, threads)
        bias = stats.bias if stats.bias is not None else float("nan")
        points.append(TetradBiasPoint(alpha=alpha, stats=stats, bias=bias,
                                      bias_infinite=not np.isfinite(bias)))
    return points


class RegionVerdict(enum.Enum):
    ASYMMETRIC = "asymmetric"
    SYMMETRIC = "symmetric"
    NON_STATIONARY = "non_stationary"
    NO_CONDENSATE = "no_condensate"


@dataclass(frozen=True)
class RegionClassification:
    gamma: float
    g: float
    absJ: float
    xi: float
    verdict: RegionVerdict
    contrast: float


ZERO_DENSITY_FLOOR = 1e-6


def classify_point(gamma: float, g: float, absJ: float, xi: float,
                   n_seeds: int, base_seed: int,
                   noise: Optional[NoiseSpec] = None,
                   integration: Optional[IntegrationControls] = None,
                   ) -> RegionClassification:
    """Classify one parameter point from a small batch of seeded trials.

    Asymmetric wins if any steady trial resolves above the contrast
    threshold; otherwise a populated steady state is Symmetric, a timeout is
    NonStationary, and decay to zero everywhere is NoCondensate.
    """
    noise = noise or NoiseSpec()
    config = dyad(absJ, SiteParams(gamma=gamma, g=g), xi,
                  integration=integration)
    thr = config.integration.asym_threshold
    best_contrast = 0.0
    saw_sym = saw_nonstat = saw_zero = False
    asym = False
    for k in range(n_seeds):
        out = run_trial(config, [(0, 1)], noise, seed=base_seed + k)
        if out.kind is TrialKind.STEADY:
            rho = out.final_densities
            if float(np.max(rho)) < ZERO_DENSITY_FLOOR:
                saw_zero = True
                continue
            contrast = abs(rho[0] - rho[1]) / (rho[0] + rho[1])
            best_contrast = max(best_contrast, float(contrast))
            if contrast >= thr:
                asym = True
            else:
                saw_sym = True
        else:
            saw_nonstat = True
    if asym:
        verdict = RegionVerdict.ASYMMETRIC
    elif saw_sym:
        verdict = RegionVerdict.SYMMETRIC
    elif saw_nonstat:
        verdict = RegionVerdict.NON_STATIONARY
    else:
        verdict = RegionVerdict.NO_CONDENSATE
    return RegionClassification(gamma=gamma, g=g, absJ=absJ, xi=xi,
                                verdict=verdict, contrast=best_contrast)


def region_sweep(gamma: float, g_values: Sequence[float],
                 absJ_values: Sequence[float], xi_values: Sequence[float],
                 n_trials_per_point: int = 8, base_seed: int = 0,
                 noise: Optional[NoiseSpec] = None,
                 integration: Optional[IntegrationControls] = None,
                 ) -> list[RegionClassification]:
    """Classify a (g, |J|, xi) grid at fixed gamma, in grid order."""
    results = []
    idx = 0
    for g in g_values:
        for absJ in absJ_values:
            for xi in xi_values:
                results.append(classify_point(
                    gamma, g, absJ, xi, n_trials_per_point,
                    base_seed + idx * n_trials_per_point, noise, integration))
                idx += 1
    return results


def xi_boundaries(classifications: Sequence[RegionClassification],
                  ) -> list[tuple[float, float, float, RegionVerdict, RegionVerdict]]:
    """Midpoints of verdict changes along increasing xi, per (g, |J|) column.

    Returns (g, absJ, xi_mid, verdict_below, verdict_above) tuples; the
    asymmetric region is bounded from above in xi, so a well-resolved column
    shows at most one Asymmetric -> non-Asymmetric switch.
    """
    columns: dict[tuple[float, float], list[RegionClassification]] = {}
    for c in classifications:
        columns.setdefault((c.g, c.absJ), []).append(c)
    out = []
    for (g, absJ), col in sorted(columns.items()):
        col = sorted(col, key=lambda c: c.xi)
        for lo, hi in zip(col, col[1:]):
            if lo.verdict != hi.verdict:
                out.append((g, absJ, 0.5 * (lo.xi + hi.xi),
                            lo.verdict, hi.verdict))
    return out
