"""Correspondence between even steady profiles and odd pendulum swings.

An even profile f, reparametrised by arc length s with inverse z = p^{-1},
maps to theta(s) = arctan f'(z(s)), which solves the pendulum equation
theta'' + lam sin(theta) = 0 with |theta| < pi/2 and theta(0) = 0; the
derivative satisfies theta'(s) = -lam f(z(s)).  The inverse map rebuilds
the profile by integrating cos(theta) for the abscissa and reading f from
-theta'/lam.  The swing period has the elliptic closed form

    L(lam) = (2/sqrt(lam)) int_{-pi/2}^{pi/2}
             dt / sqrt(1 - k^2 sin^2 t),   k = sin(arctan(alpha(lam)) / 2),

which is strictly decreasing in lam; since |arctan alpha| < pi/2 the
modulus stays below sqrt(1/2) and the integrand is uniformly smooth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from . import branch as branch_mod
from .errors import DomainError, OutOfRangeError, ParityError, SingularityError
from .ivp import SolutionProfile
from .quadrature import cumulative_gauss, gauss_panels

__all__ = [
    "PendulumTrajectory",
    "from_pendulum",
    "lambda_of_period",
    "pendulum_period",
    "to_pendulum",
]


@dataclass
class PendulumTrajectory:
    """One period of an odd pendulum swing, sampled in arc length.

    ``theta_max`` is the swing amplitude sup |theta| evaluated at the
    analytic extremum (the profile's zero crossing), not just the sampled
    maximum.
    """

    lam: float
    s: np.ndarray
    theta: np.ndarray
    theta_prime: np.ndarray
    period_L: float
    theta_max: float


def _invert_monotone(fn, dfn, targets, lo, hi, tol=1e-14):
    """Solve fn(x) = target for increasing fn with fn' >= 1 (vectorised Newton)."""
    span = hi - lo
    x = np.clip(lo + (targets - targets[0]) * span / max(targets[-1] - targets[0], tol), lo, hi)
    for _ in range(60):
        step = (fn(x) - targets) / dfn(x)
        x_new = np.clip(x - step, lo, hi)
        if np.max(np.abs(x_new - x)) < tol * span:
            return x_new
        x = x_new
    return x


def to_pendulum(profile: SolutionProfile, n_samples: int = 1024) -> PendulumTrajectory:
    """Map an even profile to its pendulum swing.

    Computes the cumulative arc length p by per-interval Gauss quadrature
    of sqrt(1 + f'^2), inverts it through a Hermite interpolant (p' is
    known exactly at the knots), and samples theta = arctan f'(z(s)),
    theta' = -lam f(z(s)) uniformly over one swing period L = p(T).
    """
    if profile.parity != "even":
        raise ParityError(f"to_pendulum requires an even profile, got parity={profile.parity!r}")
    if profile.evaluate is None:
        raise DomainError("profile lacks a dense evaluator")
    lam = profile.lam
    T = profile.period
    n_intervals = max(4096, 4 * (n_samples - 1))
    edges = np.linspace(0.0, T, n_intervals + 1)

    def speed(xs):
        return np.sqrt(1.0 + profile.evaluate(xs)[1] ** 2)

    p_edges = cumulative_gauss(speed, edges)
    L = float(p_edges[-1])
    p_spline = CubicHermiteSpline(edges, p_edges, speed(edges))
    dp_spline = p_spline.derivative()

    s = np.linspace(0.0, L, n_samples)
    z = _invert_monotone(p_spline, dp_spline, s, 0.0, T)
    z[0], z[-1] = 0.0, T
    f, fp = profile.evaluate(z)
    theta = np.arctan(fp)
    theta_prime = -lam * f
    # sup |theta| sits at the profile's zero crossing x = T/4, where the
    # slope magnitude is maximal
    slope_at_zero = profile.evaluate(np.array([0.25 * T]))[1][0]
    theta_max = abs(math.atan(slope_at_zero))
    return PendulumTrajectory(
        lam=lam, s=s, theta=theta, theta_prime=theta_prime, period_L=L, theta_max=theta_max
    )


def from_pendulum(traj: PendulumTrajectory, n_samples: int = 1024) -> SolutionProfile:
    """Rebuild the even profile from a sampled pendulum swing.

    Interpolates theta by a Hermite spline (the sampled theta' are the
    exact knot derivatives), accumulates z(s) = int cos(theta), and reads
    the profile from f(z(s)) = -theta'(s)/lam, f'(z(s)) = tan(theta(s)).
    Refuses swings that come within 1e-6 of |theta| = pi/2, where the
    tangent map degenerates.
    """
    lam = traj.lam
    margin = 0.5 * math.pi - float(np.max(np.abs(traj.theta)))
    if margin < 1e-6:
        raise SingularityError(
            f"pendulum angle within {margin:.3e} of pi/2; tangent map refused"
        )
    th_spline = CubicHermiteSpline(traj.s, traj.theta, traj.theta_prime)

    def cos_theta(ss):
        return np.cos(th_spline(ss))

    z_knots = cumulative_gauss(cos_theta, traj.s)
    T = float(z_knots[-1])
    f_knots = -np.asarray(traj.theta_prime, dtype=float) / lam
    fp_knots = np.tan(np.asarray(traj.theta, dtype=float))
    prof_spline = CubicHermiteSpline(z_knots, f_knots, fp_knots)
    dprof_spline = prof_spline.derivative()

    def ev(x):
        xr = np.mod(np.atleast_1d(np.asarray(x, dtype=float)), T)
        return prof_spline(xr), dprof_spline(xr)

    xs = np.linspace(0.0, T, n_samples)
    f, fp = ev(xs)
    return SolutionProfile(
        lam=lam,
        alpha=math.tan(traj.theta_max),
        period=T,
        parity="even",
        x=xs,
        f=f,
        f_prime=fp,
        evaluate=ev,
    )


def pendulum_period(
    lam: float,
    tol: float = 1e-12,
    root_tol: float = 1e-12,
    alpha_max: float = branch_mod.DEFAULT_ALPHA_MAX,
) -> float:
    """Swing period of the pendulum matched to the branch profile at lam.

    Evaluates (2/sqrt(lam)) * int_{-pi/2}^{pi/2} dt / sqrt(1 - k^2 sin^2 t)
    with modulus k = sin(arctan(alpha(lam))/2).  Equals 2*pi at lam = 1 and
    is strictly decreasing in lam.  Raises OutOfRangeError outside
    (lambda_star, 1].
    """
    a = branch_mod.alpha_of_lambda(lam, root_tol, alpha_max)
    k2 = math.sin(0.5 * math.atan(a)) ** 2

    def integrand(t):
        return 1.0 / np.sqrt(1.0 - k2 * np.sin(t) ** 2)

    return (2.0 / math.sqrt(lam)) * gauss_panels(integrand, -0.5 * math.pi, 0.5 * math.pi, tol=tol)


def lambda_of_period(
    L: float,
    tol: float = 1e-12,
    alpha_max: float = branch_mod.DEFAULT_ALPHA_MAX,
) -> float:
    """Branch parameter whose swing period is L (inverse of pendulum_period).

    Among all pendulum swings, those corresponding to steady profiles of
    circle period 2*pi form the one-parameter family lam in
    (lambda_star, 1] with L(lam) decreasing from its blow-up value down to
    2*pi; this solves L(lam) = L numerically.  There is no closed form to
    check against, so the guarantee is self-consistency with
    pendulum_period only.
    """
    two_pi = 2.0 * math.pi
    if L < two_pi - 1e-12:
        raise OutOfRangeError(L, (two_pi, math.inf), f"no swing period below 2*pi, got {L}")
    if L <= two_pi:
        return 1.0
    floor = branch_mod.lambda_floor(alpha_max)
    f = lambda lam: pendulum_period(lam, tol=tol, alpha_max=alpha_max) - L
    if f(floor) < 0.0:
        raise OutOfRangeError(
            L,
            (two_pi, pendulum_period(floor, tol=tol, alpha_max=alpha_max)),
            f"period {L} exceeds the largest resolvable swing period",
        )
    return float(brentq(f, floor, 1.0, xtol=tol))
