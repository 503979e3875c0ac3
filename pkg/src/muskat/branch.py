"""Global bifurcation branches of steady fingering profiles.

For each eigenvalue lam in (lambda_star, 1] there is a unique slope
alpha(lam) making the quarter period equal pi/2, hence a unique odd
profile of minimal period 2*pi.  Mode-l branches follow from the exact
rescaling (gamma, f) -> (gamma / l^2, f(l .) / l), and their even twins
from a quarter-period translation.  The endpoint behaviour against the
cell half-height h splits at h_star into three regimes: the fingers touch
the cell boundary (h < h_star), height and slope blow up together
(h = h_star), or only the slope blows up (h > h_star).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from . import ivp
from . import period as period_mod
from .errors import DomainError, OutOfRangeError, ParityError, SaturationError
from .ivp import SolutionProfile
from .quadrature import gauss_panels
from .special import constants

__all__ = [
    "Branch",
    "BranchPoint",
    "ExpansionFit",
    "PhysicalParams",
    "Regime",
    "RegimeKind",
    "alpha_of_lambda",
    "branch_amplitude",
    "coexistence_levels",
    "expansion_check",
    "fourier_sine_coefficient",
    "gamma_bar",
    "gamma_of_lambda",
    "lambda_floor",
    "lambda_h",
    "lambda_of_gamma",
    "negate_profile",
    "profile_at",
    "residual",
    "scale_profile",
    "trace_branch",
    "translate_even",
]

#: slope above which the branch point sits numerically at its blow-up limit
DEFAULT_ALPHA_MAX = 1e8

#: relative half-width of the h == h_star comparison band
H_STAR_REL_TOL = 1e-9


@dataclass(frozen=True)
class PhysicalParams:
    """Cell geometry and fluid data.

    Requires the unstable ordering rho_plus > rho_minus (heavier fluid on
    top); otherwise only the flat interface exists.
    """

    grav: float = 1.0
    rho_plus: float = 1.0
    rho_minus: float = 0.0
    h: float = 2.0

    def __post_init__(self):
        if self.grav <= 0.0:
            raise DomainError("grav must be positive")
        if self.h <= 0.0:
            raise DomainError("h must be positive")
        if not self.rho_plus > self.rho_minus:
            raise DomainError("rho_plus must exceed rho_minus (heavier fluid on top)")

    @property
    def weight(self) -> float:
        """Buoyancy prefactor g * (rho_plus - rho_minus)."""
        return self.grav * (self.rho_plus - self.rho_minus)


class RegimeKind(str, Enum):
    """Endpoint behaviour of a branch as gamma approaches gamma_h from below."""

    TOUCHES_BOUNDARY = "TOUCHES_BOUNDARY"  # (i)  h < h_star: fingers reach the cell walls
    BOTH_BLOWUP = "BOTH_BLOWUP"            # (ii) h = h_star: height and slope blow up
    SLOPE_BLOWUP = "SLOPE_BLOWUP"          # (iii) h > h_star: only the slope blows up

    @property
    def roman(self) -> str:
        return {"TOUCHES_BOUNDARY": "i", "BOTH_BLOWUP": "ii", "SLOPE_BLOWUP": "iii"}[self.value]


@dataclass(frozen=True)
class Regime:
    """Classification plus the branch endpoint (base parameters)."""

    kind: RegimeKind
    lambda_h: float
    gamma_h: float


@dataclass(frozen=True)
class BranchPoint:
    """One branch point in mode-l (scaled) coordinates.

    ``lam`` and ``gamma`` satisfy gamma = g (rho_plus - rho_minus) / lam for
    the owning PhysicalParams; ``alpha`` is the maximal slope (unchanged by
    the rescaling), ``amplitude`` the scaled peak height, ``quarter_period``
    equals pi / (2 l) by construction.  Points the slope cap could not
    resolve carry NaN data and ``truncated = True``.
    """

    lam: float
    gamma: float
    alpha: float
    amplitude: float
    quarter_period: float
    l: int
    truncated: bool = False


@dataclass
class Branch:
    """Ordered branch points (increasing lam) plus endpoint classification.

    ``regime`` is expressed in base (l = 1) parameters: its lambda_h is the
    base-window endpoint, so the scaled branch lives on base lam in
    (regime.lambda_h, 1].
    """

    l: int
    points: list[BranchPoint]
    regime: Regime
    parity: str = "odd"

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(p, name) for p in self.points], dtype=float)


def gamma_of_lambda(p: PhysicalParams, lam: float) -> float:
    """Surface tension gamma = g (rho_plus - rho_minus) / lam."""
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    return p.weight / lam


def lambda_of_gamma(p: PhysicalParams, gamma: float) -> float:
    """Inverse map lam = g (rho_plus - rho_minus) / gamma."""
    if gamma <= 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    return p.weight / gamma


def gamma_bar(p: PhysicalParams, l: int) -> float:
    """Bifurcation point gamma_bar_l = g (rho_plus - rho_minus) / l^2."""
    if l < 1:
        raise DomainError(f"mode number must be >= 1, got {l}")
    return p.weight / (l * l)


def alpha_of_lambda(
    lam: float, tol: float = 1e-12, alpha_max: float = DEFAULT_ALPHA_MAX
) -> float:
    """The unique slope alpha >= 0 with theta(lam, alpha) = pi/2.

    Defined exactly on (lambda_star, 1]; alpha(1) = 0 and alpha diverges as
    lam approaches lambda_star.  Strictly decreasing in lam.

    Raises
    ------
    OutOfRangeError
        If lam is not in (lambda_star, 1].
    SaturationError
        If the bracket exceeds ``alpha_max`` (lam too close to lambda_star).
    """
    c = constants()
    if not c.lambda_star < lam <= 1.0:
        raise OutOfRangeError(lam, (c.lambda_star, 1.0))
    target = 0.5 * math.pi
    if lam == 1.0 or period_mod.theta(lam, 0.0) - target <= 0.0:
        return 0.0
    hi = 1.0
    while period_mod.theta(lam, hi) >= target:
        if hi >= alpha_max:
            raise SaturationError(
                f"slope bracket exceeded alpha_max={alpha_max:g} at lambda={lam:.12g} "
                f"(too close to lambda_star={c.lambda_star:.12g})"
            )
        hi = min(2.0 * hi, alpha_max)
    return float(brentq(lambda a: period_mod.theta(lam, a) - target, 0.0, hi, xtol=tol))


def branch_amplitude(
    lam: float, tol: float = 1e-12, alpha_max: float = DEFAULT_ALPHA_MAX
) -> float:
    """Peak height of the branch profile at lam: max_amplitude(lam, alpha(lam))."""
    return ivp.max_amplitude(lam, alpha_of_lambda(lam, tol, alpha_max))


@lru_cache(maxsize=16)
def lambda_floor(alpha_max: float = DEFAULT_ALPHA_MAX) -> float:
    """Smallest branch parameter resolvable under the slope cap.

    Solves theta(lam, alpha_max) = pi/2; below this lam (but above
    lambda_star) the branch slope exceeds alpha_max.
    """
    c = constants()
    f = lambda lam: period_mod.theta(lam, alpha_max) - 0.5 * math.pi
    root = float(brentq(f, c.lambda_star, 1.0, xtol=1e-15))
    # land on the resolvable side so alpha_of_lambda(root) cannot saturate
    while f(root) >= 0.0:
        root += 1e-12
    return root


def lambda_h(
    p: PhysicalParams, tol: float = 1e-12, alpha_max: float = DEFAULT_ALPHA_MAX
) -> Regime:
    """Classify the branch endpoint for cell half-height p.h.

    h < h_star: solves branch_amplitude(lam) = h for the unique
    lambda_h in (lambda_star, 1) (the fingers touch the walls there).
    h = h_star (within a relative band of 1e-9): lambda_h = lambda_star,
    both height and slope blow up.  h > h_star: lambda_h = lambda_star and
    only the slope blows up while the height stays below h.
    """
    c = constants()
    if abs(p.h - c.h_star) <= H_STAR_REL_TOL * c.h_star:
        kind, lam_h = RegimeKind.BOTH_BLOWUP, c.lambda_star
    elif p.h > c.h_star:
        kind, lam_h = RegimeKind.SLOPE_BLOWUP, c.lambda_star
    else:
        kind = RegimeKind.TOUCHES_BOUNDARY
        lo = lambda_floor(alpha_max)
        if branch_amplitude(lo, tol, alpha_max) <= p.h:
            # h within ~1e-8 of h_star: the exact endpoint is beyond the
            # slope cap; report the closest resolvable parameter
            lam_h = lo
        else:
            lam_h = float(
                brentq(lambda lam: branch_amplitude(lam, tol, alpha_max) - p.h, lo, 1.0, xtol=tol)
            )
    return Regime(kind=kind, lambda_h=lam_h, gamma_h=gamma_of_lambda(p, lam_h))


def profile_at(
    lam: float,
    n_samples: int = 513,
    ode_tol: float = 1e-10,
    root_tol: float = 1e-12,
    alpha_max: float = DEFAULT_ALPHA_MAX,
) -> SolutionProfile:
    """The odd minimal-period-2*pi profile at lam in (lambda_star, 1].

    Solves alpha(lam), integrates the quarter arc, and extends by odd
    reflection; the detected period equals 2*pi to root-solve accuracy.
    Propagates OutOfRangeError / SaturationError from the slope solve.
    """
    a = alpha_of_lambda(lam, root_tol, alpha_max)
    if a == 0.0:
        return ivp.zero_profile(lam, period=2.0 * math.pi, n_samples=n_samples)
    q = ivp.solve_quarter(lam, a, tol=ode_tol)
    return ivp.extend_odd_periodic(q, n_samples=n_samples)


def _require_dense(s: SolutionProfile):
    if s.evaluate is None:
        raise DomainError("profile lacks a dense evaluator (reconstructed from samples only?)")
    return s.evaluate


def scale_profile(s: SolutionProfile, l: int) -> SolutionProfile:
    """Exact mode-l rescaling f -> f(l .) / l (eigenvalue lam -> lam l^2)."""
    if l < 1:
        raise DomainError(f"mode number must be >= 1, got {l}")
    if l == 1:
        return s
    ev = _require_dense(s)

    def ev_scaled(x):
        f, fp = ev(l * np.asarray(x, dtype=float))
        return f / l, fp

    xs = np.linspace(0.0, s.period / l, s.x.size)
    f, fp = ev_scaled(xs)
    return SolutionProfile(
        lam=s.lam * l * l,
        alpha=s.alpha,
        period=s.period / l,
        parity=s.parity,
        x=xs,
        f=f,
        f_prime=fp,
        evaluate=ev_scaled,
    )


def translate_even(s: SolutionProfile, l: int = 1) -> SolutionProfile:
    """Quarter-period translation of an odd profile into its even twin.

    The branch of even profiles of minimal period 2*pi/l is exactly the odd
    branch shifted by pi/(2l); the shift puts the profile maximum at x = 0.
    """
    if s.parity != "odd":
        raise ParityError(f"translate_even requires an odd profile, got parity={s.parity!r}")
    if abs(s.period - 2.0 * math.pi / l) > 1e-6:
        raise ParityError(
            f"profile period {s.period:.9g} does not match minimal period 2*pi/{l}"
        )
    ev = _require_dense(s)
    shift = 0.25 * s.period

    def ev_even(x):
        return ev(np.asarray(x, dtype=float) + shift)

    xs = s.x.copy()
    f, fp = ev_even(xs)
    return SolutionProfile(
        lam=s.lam,
        alpha=s.alpha,
        period=s.period,
        parity="even",
        x=xs,
        f=f,
        f_prime=fp,
        evaluate=ev_even,
    )


def negate_profile(s: SolutionProfile) -> SolutionProfile:
    """The mirror solution -f (branches carry both signs)."""
    ev = s.evaluate

    def ev_neg(x):
        f, fp = ev(x)
        return -f, -fp

    return SolutionProfile(
        lam=s.lam,
        alpha=s.alpha,
        period=s.period,
        parity=s.parity,
        x=s.x.copy(),
        f=-s.f,
        f_prime=-s.f_prime,
        evaluate=ev_neg if ev is not None else None,
    )


def _grid(lam_start: float, n_points: int, include_start: bool) -> np.ndarray:
    # quadratically graded toward lam_start, where alpha(lam) steepens
    if include_start:
        t = np.arange(n_points) / (n_points - 1)
    else:
        t = np.arange(1, n_points + 1) / n_points
    # rounding of lam_start + (1 - lam_start) must not overshoot the window
    return np.minimum(lam_start + (1.0 - lam_start) * t**2, 1.0)


def trace_branch(
    p: PhysicalParams,
    l: int = 1,
    n_points: int = 50,
    tol: float = 1e-12,
    alpha_max: float = DEFAULT_ALPHA_MAX,
) -> Branch:
    """Trace the mode-l branch over its feasible window.

    Base points (lam, alpha(lam)) on a graded grid are rescaled per mode:
    lam -> lam l^2, gamma -> gamma / l^2, amplitude -> amplitude / l,
    quarter period -> pi / (2 l).  The window endpoint uses the effective
    ceiling l * h (the scaled profile must stay below h).  In the touching
    regime the solved endpoint is included as the first grid point; in the
    blow-up regimes the window is open at lambda_star and points the slope
    cap cannot resolve are emitted as truncated rows, never fabricated.
    """
    if l < 1:
        raise DomainError(f"mode number must be >= 1, got {l}")
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    regime = lambda_h(replace(p, h=l * p.h), tol, alpha_max)
    touches = regime.kind is RegimeKind.TOUCHES_BOUNDARY
    grid = _grid(regime.lambda_h, n_points, include_start=touches)

    points: list[BranchPoint] = []
    for lam in grid:
        gamma_scaled = gamma_of_lambda(p, lam) / (l * l)
        try:
            a = alpha_of_lambda(float(lam), tol, alpha_max)
            amp = ivp.max_amplitude(float(lam), a)
            pt = BranchPoint(
                lam=float(lam) * l * l,
                gamma=gamma_scaled,
                alpha=a,
                amplitude=amp / l,
                quarter_period=0.5 * math.pi / l,
                l=l,
            )
        except SaturationError:
            pt = BranchPoint(
                lam=float(lam) * l * l,
                gamma=gamma_scaled,
                alpha=math.nan,
                amplitude=math.nan,
                quarter_period=math.nan,
                l=l,
                truncated=True,
            )
        points.append(pt)
    return Branch(l=l, points=points, regime=regime, parity="odd")


def residual(s: SolutionProfile) -> tuple[float, float]:
    """Defect of the steady equation and the mean of f over one period.

    Returns (max |f''/(1+f'^2)^(3/2) + lam f|, |mean f|) with f'' estimated
    by periodic second differences on the uniform sample grid and the mean
    by the trapezoid rule.  Expects the closed uniform grid the library
    emits (last sample repeats the first periodically).
    """
    x, f, fp = s.x, s.f, s.f_prime
    step = x[1] - x[0]
    fi, gi = f[:-1], fp[:-1]
    f2 = (np.roll(fi, -1) - 2.0 * fi + np.roll(fi, 1)) / step**2
    res = f2 / (1.0 + gi * gi) ** 1.5 + s.lam * fi
    mean = np.trapezoid(f, x) / s.period
    return float(np.max(np.abs(res))), float(abs(mean))


def fourier_sine_coefficient(s: SolutionProfile, k: int = 1, tol: float = 1e-13) -> float:
    """Coefficient of sin(2 pi k x / T) of the profile over one period."""
    ev = _require_dense(s)
    w = 2.0 * math.pi * k / s.period

    def fn(x):
        return ev(x)[0] * np.sin(w * x)

    return (2.0 / s.period) * gauss_panels(fn, 0.0, s.period, tol=tol, max_panels=128)


@dataclass(frozen=True)
class ExpansionFit:
    """Result of fitting gamma(eps) = gamma_bar + c eps^2 near a bifurcation point.

    ``coefficient`` is the eps -> 0 extrapolation of
    (gamma(eps) - gamma_bar) / eps^2; ``expected`` is the analytic value
    3 g (rho_plus - rho_minus) / 8.
    """

    l: int
    coefficient: float
    expected: float
    eps: tuple[float, ...]
    gammas: tuple[float, ...]
    ratios: tuple[float, ...]


def _lambda_for_coefficient(eps_base: float, root_tol: float, ode_tol: float) -> float:
    """Base lam whose odd 2*pi profile has first sine coefficient eps_base."""

    def coefficient(lam: float) -> float:
        prof = profile_at(lam, n_samples=65, ode_tol=ode_tol, root_tol=root_tol)
        return fourier_sine_coefficient(prof, 1)

    f = lambda lam: coefficient(lam) - eps_base
    c = constants()
    # near the bifurcation point gamma = 1/lam grows like 1 + (3/8) eps^2
    guess_gap = 0.375 * eps_base * eps_base
    lo = 1.0 - 2.0 * guess_gap - 1e-6
    while f(lo) < 0.0:
        lo = 1.0 - 2.0 * (1.0 - lo)
        if lo <= c.lambda_star + 1e-6:
            raise SaturationError(f"no branch point with sine coefficient {eps_base}")
    return float(brentq(f, lo, 1.0, xtol=root_tol))


def expansion_check(
    p: PhysicalParams,
    l: int = 1,
    eps_list: tuple[float, ...] = (0.02, 0.04, 0.08),
    root_tol: float = 1e-12,
    ode_tol: float = 1e-10,
) -> ExpansionFit:
    """Measure the quadratic coefficient of gamma along the mode-l branch.

    For each eps the branch point whose (even-translated) profile has first
    cosine coefficient eps is located by matching the base profile's sine
    coefficient to l * eps; the ratios (gamma(eps) - gamma_bar_l) / eps^2
    are then extrapolated to eps -> 0 by a least-squares fit in eps^2.  The
    limit is 3 g (rho_plus - rho_minus) / 8 for every l.
    """
    if l < 1:
        raise DomainError(f"mode number must be >= 1, got {l}")
    eps_sorted = tuple(sorted(float(e) for e in eps_list))
    if not eps_sorted:
        raise DomainError("eps_list must not be empty")
    for e in eps_sorted:
        if not 0.0 < e <= 0.1:
            raise DomainError(f"eps values must lie in (0, 0.1], got {e}")
    gb = gamma_bar(p, l)
    gammas = []
    ratios = []
    for eps in eps_sorted:
        lam = _lambda_for_coefficient(l * eps, root_tol, ode_tol)
        gam = gamma_of_lambda(p, lam) / (l * l)
        gammas.append(gam)
        ratios.append((gam - gb) / eps**2)
    if len(eps_sorted) == 1:
        coeff = ratios[0]
    else:
        design = np.vstack([np.ones(len(eps_sorted)), np.square(eps_sorted)]).T
        sol, *_ = np.linalg.lstsq(design, np.asarray(ratios), rcond=None)
        coeff = float(sol[0])
    return ExpansionFit(
        l=l,
        coefficient=coeff,
        expected=0.375 * p.weight,
        eps=eps_sorted,
        gammas=tuple(gammas),
        ratios=tuple(ratios),
    )


def coexistence_levels(p: PhysicalParams, l_max: int) -> list[tuple[int, tuple[float, float]]]:
    """Modes l whose branch shares a gamma window with the mode l+1 branch.

    Level l qualifies when gamma_bar_{l+1} < gamma_bar_l <
    gamma_star/(l+1)^2 < gamma_star/l^2, i.e. when lambda_star <
    (l/(l+1))^2; the shared window is (gamma_bar_l, gamma_star/(l+1)^2).
    Assumes the blow-up end of both branches is admissible (the large-l /
    large-h situation where the branch sup is gamma_star / l^2).
    """
    if l_max < 2:
        raise DomainError(f"l_max must be >= 2, got {l_max}")
    gamma_star = p.weight / constants().lambda_star
    out: list[tuple[int, tuple[float, float]]] = []
    for l in range(1, l_max + 1):
        gb_l = gamma_bar(p, l)
        gb_next = gamma_bar(p, l + 1)
        hi_next = gamma_star / (l + 1) ** 2
        hi_l = gamma_star / l**2
        if gb_next < gb_l < hi_next < hi_l:
            out.append((l, (gb_l, hi_next)))
    return out
