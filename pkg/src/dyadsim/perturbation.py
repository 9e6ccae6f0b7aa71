"""First-order calibration analytics for a blueshift-perturbed dyad.

A dyad whose second site carries a blueshift imperfection g -> g + eps can
be rebalanced by adjusting that site's pumping to gamma0 + eps*gamma1. This
module provides the unperturbed equal-occupancy base state, the general
first-order linear system in eps, and the small-asymmetry closed forms.

Phase convention: the dyad state is written psi_1 = a_1 (real, > 0) and
psi_2 = a_2 exp(-i theta), i.e. theta is the phase of site 1 relative to
site 2. With this choice the closed-form theta1 below is positive, matching
the sign of the coupling phase factor exp(i (-1)^j theta) used in the base
equations.

The expansion in small eps reads

    psi_1 = a1 + eps a1_1,     psi_2 = (a2 + eps a2_1) exp(-i(theta + eps theta1)),
    mu = mu0 + eps mu1,        gamma-tilde = gamma0 + eps gamma1.

The four real first-order equations determine (a1_1, a2_1, theta1, gamma1)
affinely in the free parameter mu1; mu1 itself is fixed by requiring gamma1
to be invariant under relabelling the two sites (a1 <-> a2, theta <-> -theta).
At an exactly symmetric base the relabelling condition degenerates and its
small-asymmetry limit is used instead: the first-order corrections must
preserve equal occupancy, a1_1 = a2_1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .errors import (ConfigurationError, DegenerateCouplingError,
                     NoCondensateError, SingularLinearizationError)

_BASE_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class DyadParams:
    J: float
    gamma0: float
    g: float
    xi: float

    def __post_init__(self):
        if not abs(self.J) < 1.0:
            raise ConfigurationError("|J| must be < 1")
        if not self.xi > 0.0:
            raise ConfigurationError("xi must be > 0")


@dataclass(frozen=True)
class DyadBaseState:
    """Unperturbed steady dyad (a1, a2, theta, mu) for given parameters."""

    a1: float
    a2: float
    theta: float
    mu: float
    params: DyadParams

    def __post_init__(self):
        if not (self.a1 > 0.0 and self.a2 > 0.0):
            raise ConfigurationError("base amplitudes must be positive")
        res = base_residual(self)
        if np.max(np.abs(res)) > 1e-8:
            raise ConfigurationError(
                f"base state residual {np.max(np.abs(res)):.2e} is too large "
                "to be a steady dyad")


@dataclass(frozen=True)
class PerturbationSolution:
    """First-order corrections (a1_1, a2_1, gamma1, theta1, mu1)."""

    a1_1: float
    a2_1: float
    gamma1: float
    theta1: float
    mu1: float


def dyad_residual(a1: float, a2: float, theta: float, mu: float,
                  J: float, gamma_1: float, gamma_2: float,
                  g_1: float, g_2: float, xi: float) -> np.ndarray:
    """Steady-frame residual R_j = rhs_j + i mu psi_j of the two-site system.

    Site parameters may differ (gamma-tilde, g + eps on site 2). Returns the
    two complex residuals; both vanish at a steady state.
    """
    p1 = a1
    p2 = a2 * np.exp(-1j * theta)
    r1 = (1j * mu * p1 - 1j * abs(p1) ** 2 * p1 - p1
          + (1.0 - 1j * g_1) * (gamma_1 / (1.0 + xi * abs(p1) ** 2) * p1 + J * p2))
    r2 = (1j * mu * p2 - 1j * abs(p2) ** 2 * p2 - p2
          + (1.0 - 1j * g_2) * (gamma_2 / (1.0 + xi * abs(p2) ** 2) * p2 + J * p1))
    return np.array([r1, r2])


def base_residual(state: DyadBaseState) -> np.ndarray:
    """Residual of the unperturbed steady-state equations, both site branches."""
    p = state.params
    return dyad_residual(state.a1, state.a2, state.theta, state.mu,
                         p.J, p.gamma0, p.gamma0, p.g, p.g, p.xi)


def equal_occupancy_state(J: float, gamma0: float, g: float,
                          xi: float) -> DyadBaseState:
    """Symmetric fixed point: a1 = a2, theta in {0, pi}, mu = g + a1^2.

    The occupation is a1^2 = (gamma0 + |J| - 1) / ((1 - |J|) xi); the state
    only condenses when gamma0 + |J| > 1.
    """
    params = DyadParams(J, gamma0, g, xi)
    if gamma0 + abs(J) <= 1.0:
        raise NoCondensateError(
            f"gamma0 + |J| = {gamma0 + abs(J):.4f} <= 1: no condensed state")
    rho = (gamma0 + abs(J) - 1.0) / ((1.0 - abs(J)) * xi)
    a = np.sqrt(rho)
    theta = 0.0 if J >= 0.0 else np.pi
    mu = g + rho
    return DyadBaseState(a1=a, a2=a, theta=theta, mu=mu, params=params)


def find_asymmetric_state(J: float, gamma0: float, g: float, xi: float,
                          guess: tuple[float, float, float, float] | None = None,
                          ) -> DyadBaseState:
    """Numerically locate an asymmetric steady dyad (root of the base equations).

    Amplitude signs are normalized to positive by folding them into theta.
    Raises NoCondensateError when the root finder lands on the symmetric or
    zero state instead.
    """
    params = DyadParams(J, gamma0, g, xi)
    if guess is None:
        sym = equal_occupancy_state(J, gamma0, g, xi)
        guesses = [(r * sym.a1, sym.a1 / r, sym.theta + dth, sym.mu + dmu)
                   for r in (1.2, 1.5)
                   for dth in (0.3, 0.7, -0.3, -0.7)
                   for dmu in (0.3, 0.8)]
    else:
        guesses = [guess]

    def fun(v):
        r = dyad_residual(v[0], v[1], v[2], v[3], J, gamma0, gamma0, g, g, xi)
        return [r[0].real, r[0].imag, r[1].real, r[1].imag]

    v = None
    for trial_guess in guesses:
        sol = scipy.optimize.fsolve(fun, trial_guess, full_output=True)
        cand, _, ier, msg = sol
        if ier != 1:
            continue
        if abs(abs(cand[0]) - abs(cand[1])) > 1e-6 * max(abs(cand[0]), abs(cand[1])) \
                and min(abs(cand[0]), abs(cand[1])) > 1e-6:
            v = cand
            break
    if v is None:
        raise NoCondensateError(
            "asymmetric root search failed: no asymmetric root found from "
            "any starting point")
    a1, a2, theta, mu = v
    if a1 < 0:
        a1 = -a1  # psi_1 real positive; a global gauge sign flip moves to theta
        theta += np.pi
    if a2 < 0:
        a2 = -a2
        theta += np.pi
    theta = float(np.arctan2(np.sin(theta), np.cos(theta)))
    if abs(a1 - a2) < 1e-6 * max(a1, a2) or min(a1, a2) < 1e-6:
        raise NoCondensateError("root search converged to a non-asymmetric state")
    return DyadBaseState(a1=float(a1), a2=float(a2), theta=theta, mu=float(mu),
                         params=params)


def _first_order_system(a1: float, a2: float, theta: float, mu: float,
                        J: float, gamma0: float, g: float, xi: float):
    """Real 4x4 system A x = b0 + mu1 * bmu for x = (a1_1, a2_1, theta1, gamma1).

    Rows are Re/Im of the two linearized steady-frame equations; columns are
    hand-derived partial derivatives of the complex residuals with respect
    to each expansion coefficient, evaluated at the base state:

        dR1/da1   = i mu - 3 i a1^2 - 1 + (1 - i g) gamma0 (1 - xi a1^2)/(1 + xi a1^2)^2
        dR1/da2   = (1 - i g) J e^{-i theta}
        dR1/dth   = -i (1 - i g) J a2 e^{-i theta}          (theta enters psi_2 as e^{-i theta})
        dR1/dgam  = 0                                        (site 1 keeps gamma0)
        dR2/da2   = e^{-i theta} [i mu - 3 i a2^2 - 1 + (1 - i g) gamma0 (1 - xi a2^2)/(1 + xi a2^2)^2]
        dR2/da1   = (1 - i g) J
        dR2/dth   = -i e^{-i theta} [i mu a2 - i a2^3 - a2 + (1 - i g) gamma0 a2 / (1 + xi a2^2)]
        dR2/dgam  = (1 - i g) a2 e^{-i theta} / (1 + xi a2^2)
        dR/dmu    = i psi                                    (mu1 forcing)
        dR2/deps  = -i [gamma0 a2 e^{-i theta} / (1 + xi a2^2) + J a1]   (explicit eps forcing)
    """
    e = np.exp(-1j * theta)
    s1 = 1.0 + xi * a1 ** 2
    s2 = 1.0 + xi * a2 ** 2
    d1 = (1.0 - xi * a1 ** 2) / s1 ** 2
    d2 = (1.0 - xi * a2 ** 2) / s2 ** 2
    og = 1.0 - 1j * g
    rows = (
        # (d/da1, d/da2, d/dtheta, d/dgamma, d/dmu, d/deps)
        (1j * mu - 3j * a1 ** 2 - 1.0 + og * gamma0 * d1,
         og * J * e,
         -1j * og * J * a2 * e,
         0.0 + 0.0j,
         1j * a1,
         0.0 + 0.0j),
        (og * J,
         e * (1j * mu - 3j * a2 ** 2 - 1.0 + og * gamma0 * d2),
         -1j * e * (1j * mu * a2 - 1j * a2 ** 3 - a2 + og * gamma0 * a2 / s2),
         og * a2 * e / s2,
         1j * a2 * e,
         -1j * (gamma0 * a2 * e / s2 + J * a1)),
    )
    A = np.zeros((4, 4))
    b0 = np.zeros(4)
    bmu = np.zeros(4)
    for r, (ca1, ca2, cth, cg, cmu, ceps) in enumerate(rows):
        for k, part in enumerate((np.real, np.imag)):
            i = 2 * r + k
            A[i] = (part(ca1), part(ca2), part(cth), part(cg))
            b0[i] = -part(ceps)
            bmu[i] = -part(cmu)
    return A, b0, bmu


def _affine_solution(a1, a2, theta, mu, J, gamma0, g, xi):
    """x(mu1) = x0 + mu1 * x1 for x = (a1_1, a2_1, theta1, gamma1)."""
    A, b0, bmu = _first_order_system(a1, a2, theta, mu, J, gamma0, g, xi)
    if np.linalg.cond(A) > 1e12:
        raise SingularLinearizationError(
            "first-order system is rank-deficient (degenerate/bifurcation point)")
    x0 = np.linalg.solve(A, b0)
    x1 = np.linalg.solve(A, bmu)
    return x0, x1


def solve_first_order(base: DyadBaseState) -> PerturbationSolution:
    """Solve the four first-order equations and fix mu1 by swap invariance.

    gamma1(mu1) is affine; equating it with the value from the relabelled
    base (a1 <-> a2, theta <-> -theta) yields mu1. At a symmetric base the
    swap condition is vacuous and the equal-occupancy limit a1_1 = a2_1
    takes over.
    """
    p = base.params
    x0, x1 = _affine_solution(base.a1, base.a2, base.theta, base.mu,
                              p.J, p.gamma0, p.g, p.xi)
    y0, y1 = _affine_solution(base.a2, base.a1, -base.theta, base.mu,
                              p.J, p.gamma0, p.g, p.xi)
    c0 = x0[3] - y0[3]
    c1 = x1[3] - y1[3]
    scale = max(abs(x1[3]), abs(y1[3]), 1.0)
    if abs(c1) > 1e-9 * scale:
        mu1 = -c0 / c1
    else:
        if abs(c0) > 1e-9 * max(abs(x0[3]), 1.0):
            raise SingularLinearizationError(
                "swap condition is inconsistent: gamma1 differs between "
                "labelings but does not depend on mu1")
        d0 = x0[0] - x0[1]
        d1 = x1[0] - x1[1]
        if abs(d1) < 1e-12 * max(abs(x1[0]), abs(x1[1]), 1.0):
            raise SingularLinearizationError(
                "equal-occupancy condition cannot fix mu1 at this base")
        mu1 = -d0 / d1
    x = x0 + mu1 * x1
    return PerturbationSolution(a1_1=float(x[0]), a2_1=float(x[1]),
                                gamma1=float(x[3]), theta1=float(x[2]),
                                mu1=float(mu1))


def closed_form_corrections(J: float, gamma0: float, g: float,
                            xi: float) -> PerturbationSolution:
    """Small-asymmetry closed forms:

        gamma1 = -g gamma0 / ((1 + g^2)(1 - |J|))
        theta1 = 1 / (2 (1 + g^2) |J|)
        mu1    = 1/2 - gamma0 g / (2 (1 + g^2) (1 - |J|)^2 xi)

    with (a1_1, a2_1) recovered from the linear system at those values.
    """
    if J == 0.0:
        raise DegenerateCouplingError("theta1 is singular at |J| = 0")
    base = equal_occupancy_state(J, gamma0, g, xi)
    one_g2 = 1.0 + g ** 2
    absj = abs(J)
    gamma1 = -g * gamma0 / (one_g2 * (1.0 - absj))
    theta1 = 1.0 / (2.0 * one_g2 * absj)
    mu1 = 0.5 - gamma0 * g / (2.0 * one_g2 * (1.0 - absj) ** 2 * xi)
    p = base.params
    A, b0, bmu = _first_order_system(base.a1, base.a2, base.theta, base.mu,
                                     p.J, p.gamma0, p.g, p.xi)
    # amplitudes from the 4x2 subsystem once (theta1, gamma1, mu1) are pinned
    rhs = b0 + mu1 * bmu - theta1 * A[:, 2] - gamma1 * A[:, 3]
    amps, residual, rank, _ = np.linalg.lstsq(A[:, :2], rhs, rcond=None)
    if rank < 2:
        raise SingularLinearizationError("amplitude subsystem is rank-deficient")
    return PerturbationSolution(a1_1=float(amps[0]), a2_1=float(amps[1]),
                                gamma1=gamma1, theta1=theta1, mu1=mu1)


def corrected_state_residual(base: DyadBaseState, sol: PerturbationSolution,
                             eps: float) -> float:
    """Max |residual| of the full nonlinear perturbed equations at the
    first-order-corrected state; decays as O(eps^2) when sol is valid."""
    p = base.params
    res = dyad_residual(base.a1 + eps * sol.a1_1,
                        base.a2 + eps * sol.a2_1,
                        base.theta + eps * sol.theta1,
                        base.mu + eps * sol.mu1,
                        p.J, p.gamma0, p.gamma0 + eps * sol.gamma1,
                        p.g, p.g + eps, p.xi)
    return float(np.max(np.abs(res)))


def analytic_calibration_curve(J: float, gamma0: float, g: float, xi: float,
                               epsilons) -> list[tuple[float, float]]:
    """Locus of (r_g, r_gamma) pairs preserving equal occupancy, to first order.

    r_g = (g + eps)/g and r_gamma = (gamma0 + eps*gamma1)/gamma0; an affine
    line through (1, 1) with slope gamma1 * g / gamma0 in r_g.
    """
    if g == 0.0:
        raise ConfigurationError("r_g is undefined at g = 0")
    sol = closed_form_corrections(J, gamma0, g, xi)
    out = []
    for eps in epsilons:
        if abs(eps / g) > 0.2:
            warnings.warn(f"eps = {eps} is outside first-order validity "
                          f"(|eps/g| = {abs(eps / g):.2f} > 0.2)", stacklevel=2)
        r_g = (g + eps) / g
        if r_g <= 0.0:
            raise ConfigurationError(f"eps = {eps} drives r_g non-positive")
        out.append((r_g, (gamma0 + eps * sol.gamma1) / gamma0))
    return out


def calibration_slope(J: float, g: float) -> float:
    """d r_gamma / d r_g along the analytic equal-occupancy locus:
    -g^2 / ((1 + g^2)(1 - |J|))."""
    return -g ** 2 / ((1.0 + g ** 2) * (1.0 - abs(J)))
