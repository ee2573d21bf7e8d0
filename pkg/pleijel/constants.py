"""
Pleijel constants in closed form and through the transcendental problem

    Pl(B) = 8 sup_{x>0} x cos^2 theta(x),   tan theta - theta = pi x.
"""

import functools
import logging
import math
from fractions import Fraction
from typing import List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field
from scipy import optimize
from scipy.special import gammaln

from pleijel.special import EPS, bessel_zero
from pleijel.utils import SolverParams

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi

# Maximizer grid: log-spaced on (1e-3, 4]
GRID_POINTS = 512
GRID_LO = 1e-3
GRID_HI = 4.0

Method = Literal["closed_form", "transcendental_max", "empirical_trace", "annulus_surrogate"]


class ThetaSolution(BaseModel, frozen=True):
    """The root theta(x) of tan theta - theta = pi x in (0, pi/2).

    `complement` is pi/2 - theta, kept separately because theta rounds to
    pi/2 long before the complement loses precision.
    """

    x: float = Field(..., gt=0)
    theta: float = Field(..., gt=0, lt=HALF_PI)
    complement: float = Field(..., gt=0, description="pi/2 - theta")

    @property
    def cos_theta(self) -> float:
        if self.theta > 0.5 * HALF_PI:
            return math.sin(self.complement)
        return math.cos(self.theta)

    @property
    def residual(self) -> float:
        """|tan theta - theta - pi x|, through cot of the complement near pi/2."""
        if self.theta > 0.5 * HALF_PI:
            lhs = 1 / math.tan(self.complement) + self.complement - HALF_PI
        else:
            lhs = tan_minus_identity(self.theta)
        return abs(lhs - math.pi * self.x)


class PleijelEstimate(BaseModel, frozen=True):
    """A value of a Pleijel constant and how it was obtained."""

    value: float = Field(..., gt=0, lt=1, description="The constant.")
    argmax_x: Optional[float] = Field(
        None, gt=0, description="Maximizing ratio x = lim k / nu, if any."
    )
    theta_at_argmax: Optional[float] = Field(None, description="theta(argmax_x).")
    method: Method = Field(..., description="How the value was obtained.")
    tolerance: float = Field(0.0, ge=0, description="Accuracy of argmax_x or value.")
    density: Optional[float] = Field(
        None, description="Angular density pi x0 / alpha, for sectors."
    )
    flags: List[str] = Field(
        default_factory=list, description="Hypotheses known to fail."
    )
    notes: List[str] = Field(
        default_factory=list, description="Assumptions that cannot be verified."
    )


def _validate_dimension(N: int) -> int:
    if isinstance(N, bool) or int(N) != N or N < 2:
        raise ValueError(f"Dimension N must be an integer >= 2, got {N!r}.")
    return int(N)


def log_gamma_bound(N: int, params: Optional[SolverParams] = None) -> float:
    N = _validate_dimension(N)
    j = bessel_zero(N / 2 - 1, 1, params)
    return (N - 2) * math.log(2) + 2 * math.log(N) + 2 * gammaln(N / 2) - N * math.log(j)


def gamma_bound(N: int, params: Optional[SolverParams] = None) -> float:
    """gamma(N) = 2^(N-2) N^2 Gamma(N/2)^2 / j_{N/2-1,1}^N.

    Pl(Omega) <= gamma(N) for every bounded Omega in R^N; gamma(2) =
    4 / j_{0,1}^2.
    """
    return math.exp(log_gamma_bound(N, params))


def gamma_ratio(N: int, params: Optional[SolverParams] = None) -> float:
    """gamma(N+1) / gamma(N), tending to 2/e."""
    return math.exp(log_gamma_bound(N + 1, params) - log_gamma_bound(N, params))


def log_rho(N: int) -> float:
    N = _validate_dimension(N)
    return N * math.log(2) + gammaln(N / 2 + 1) - 0.5 * N * (math.log(math.pi) + math.log(N))


def rho(N: int) -> float:
    """rho(N) = 2^N Gamma(N/2 + 1) / (pi^(N/2) N^(N/2)), the orthotope constant."""
    return math.exp(log_rho(N))


def rho_ratio(N: int) -> float:
    """rho(N+1) / rho(N), tending to sqrt(2 / (pi e))."""
    return math.exp(log_rho(N + 1) - log_rho(N))


def gautschi_step(x: float) -> bool:
    """Gamma(x+1) < (x+1/2)^(1/2) Gamma(x+1/2)."""
    return bool(gammaln(x + 1) < 0.5 * math.log(x + 0.5) + gammaln(x + 0.5))


def tan_minus_identity(theta: float) -> float:
    """tan(theta) - theta, by its Taylor series where the difference cancels."""
    if theta < 0.05:
        t2 = theta * theta
        return theta * t2 * (
            1 / 3
            + t2 * (2 / 15 + t2 * (17 / 315 + t2 * (62 / 2835 + t2 * 1382 / 155925)))
        )
    return math.tan(theta) - theta


# tan(pi/4) - pi/4: above it theta > pi/4 and the complement is solved for.
COMPLEMENT_SWITCH = 1 - 0.25 * math.pi


def _solve_small(target: float) -> float:
    def f(theta: float) -> float:
        return tan_minus_identity(theta) - target

    # tan(0.8) - 0.8 > COMPLEMENT_SWITCH, so the bracket always holds the root
    theta = optimize.brentq(f, 0.0, 0.8, xtol=1e-300, rtol=4 * EPS)
    polished, pinfo = optimize.newton(
        f,
        theta,
        fprime=lambda t: math.tan(t) ** 2,
        tol=4 * EPS * theta,
        maxiter=4,
        full_output=True,
        disp=False,
    )
    if pinfo.converged and 0 < polished < HALF_PI and abs(f(polished)) <= abs(f(theta)):
        theta = polished
    return theta


def _solve_complement(x: float) -> float:
    # phi = pi/2 - theta solves cot phi + phi = pi x + pi/2 =: T, with the
    # root in [1/(2T), 2/T] for T >= 2.
    total = math.pi * x + HALF_PI
    if not math.isfinite(total) or total > 1e16:
        # cot phi + phi = T gives phi = 1/T + O(T^-3)
        return (1 / math.pi) / (x + 0.5)

    def g(phi: float) -> float:
        return 1 / math.tan(phi) + phi - total

    phi = optimize.brentq(g, 0.5 / total, 2 / total, xtol=1e-300, rtol=4 * EPS)
    polished, pinfo = optimize.newton(
        g,
        phi,
        fprime=lambda p: -1 / math.tan(p) ** 2,
        tol=4 * EPS * phi,
        maxiter=4,
        full_output=True,
        disp=False,
    )
    if pinfo.converged and 0 < polished < HALF_PI and abs(g(polished)) <= abs(g(phi)):
        phi = polished
    return phi


def solve_theta(x: float) -> ThetaSolution:
    """Solves tan theta - theta = pi x for theta in (0, pi/2).

    The left side increases strictly on (0, pi/2), so the root is unique.
    Below theta = pi/4 Brent's method runs on theta directly; above it the
    complement phi = pi/2 - theta is found from cot phi + phi = pi x + pi/2,
    which stays well conditioned for every finite x. Both are followed by a
    Newton polish.
    """
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"x must be a finite real > 0, got {x!r}.")

    if math.pi * x <= COMPLEMENT_SWITCH:
        theta = _solve_small(math.pi * x)
        return ThetaSolution(x=x, theta=theta, complement=HALF_PI - theta)

    phi = _solve_complement(x)
    theta = min(HALF_PI - phi, math.nextafter(HALF_PI, 0.0))
    return ThetaSolution(x=x, theta=theta, complement=phi)


def disk_objective(x: float) -> float:
    """f(x) = 8 x cos^2 theta(x)."""
    c = solve_theta(x).cos_theta
    # cos^2 theta underflows for huge x while x cos^2 theta does not
    return 8 * x * c * c


def elbert_laforgia(x: float) -> float:
    """lim_{nu -> inf} j_{nu, nu x} / nu = 1 / cos theta(x)."""
    return 1 / solve_theta(x).cos_theta


@functools.lru_cache(maxsize=32)
def pleijel_disk(tolerance: float = 1e-10) -> PleijelEstimate:
    """Pl(B) = 8 sup_{x>0} x cos^2 theta(x).

    A 512-point log grid on (1e-3, 4] locates the global grid maximum,
    which must be a strict interior local maximum; golden-section search
    then refines it to `tolerance` in x. Grid-local maxima within 1e-9 of
    the best are reported as near-ties.

    Args:
        tolerance (float): Accuracy in x, within [1e-14, 1e-4]. Golden
            section cannot resolve x below sqrt(machine eps) relative, so
            the reported tolerance is never smaller than that.

    Raises:
        ValueError: If the tolerance is out of range.
        RuntimeError: If the grid maximum is not a strict interior maximum.

    Returns:
        PleijelEstimate: value, argmax_x = x0 and theta(x0).
    """
    if not (1e-14 <= tolerance <= 1e-4):
        raise ValueError(f"tolerance must lie in [1e-14, 1e-4], got {tolerance!r}.")

    grid = np.geomspace(GRID_LO, GRID_HI, GRID_POINTS)
    values = np.array([disk_objective(x) for x in grid])
    i = int(np.argmax(values))
    if not (0 < i < GRID_POINTS - 1) or not (
        values[i] > values[i - 1] and values[i] > values[i + 1]
    ):
        raise RuntimeError(
            f"Grid maximum at x={grid[i]!r} is not a strict interior maximum."
        )

    flags = []
    interior = values[1:-1]
    local = np.where((interior >= values[:-2]) & (interior >= values[2:]))[0] + 1
    ties = [int(j) for j in local if j != i and values[i] - values[j] <= 1e-9]
    if ties:
        message = "near-tied grid maxima at x=" + ", ".join(f"{grid[j]:.6g}" for j in ties)
        logger.warning(message)
        flags.append(message)

    x_mid = float(grid[i])
    xtol = max(tolerance, math.sqrt(EPS) * x_mid)
    result = optimize.minimize_scalar(
        lambda x: -disk_objective(x),
        bracket=(float(grid[i - 1]), x_mid, float(grid[i + 1])),
        method="golden",
        options={"xtol": xtol / (2 * x_mid)},
    )
    x0 = float(result.x)
    solution = solve_theta(x0)
    value = 8 * x0 * solution.cos_theta * solution.cos_theta
    logger.info(f"Pl(B) = {value!r} at x0 = {x0!r} ({result.nit} golden steps)")

    return PleijelEstimate(
        value=value,
        argmax_x=x0,
        theta_at_argmax=solution.theta,
        method="transcendental_max",
        tolerance=xtol,
        flags=flags,
    )


def _validate_angle(alpha: float) -> float:
    alpha = float(alpha)
    if not (0 < alpha <= 2 * math.pi):
        raise ValueError(f"Sector angle must lie in (0, 2 pi], got {alpha!r}.")
    return alpha


def sector_angular_density(
    alpha: float, estimate: Optional[PleijelEstimate] = None
) -> float:
    """pi x0 / alpha, the limit of the angular index over the radial index."""
    alpha = _validate_angle(alpha)
    estimate = estimate or pleijel_disk()
    assert estimate.argmax_x is not None
    return math.pi * estimate.argmax_x / alpha


def is_pi_over_integer(alpha: float) -> bool:
    m = math.pi / alpha
    return abs(m - round(m)) <= 1e-12 * m


def pleijel_sector(alpha: float, tolerance: float = 1e-10) -> PleijelEstimate:
    """Pl of the sector of angle alpha, equal to Pl(B) when its spectrum is simple.

    Simplicity is guaranteed for alpha = pi/m (Bourget's hypothesis); for
    other angles the estimate carries a flag.
    """
    alpha = _validate_angle(alpha)
    estimate = pleijel_disk(tolerance)
    flags = list(estimate.flags)
    if not is_pi_over_integer(alpha):
        flags.append(
            f"alpha={alpha!r} is not pi/m; simplicity of the sector spectrum "
            + "is not guaranteed"
        )
    return estimate.model_copy(
        update={"density": sector_angular_density(alpha, estimate), "flags": flags}
    )


def rational_square_ratios(
    lengths: Sequence[float], max_denominator: int = 1000
) -> List[str]:
    """Flags pairs whose squared side ratio is numerically a small rational."""
    flags = []
    for i in range(len(lengths)):
        for j in range(i + 1, len(lengths)):
            ratio = (lengths[i] / lengths[j]) ** 2
            frac = Fraction(ratio).limit_denominator(max_denominator)
            if abs(ratio - float(frac)) <= 1e-12 * ratio:
                flags.append(
                    f"a{i + 1}^2/a{j + 1}^2 = {frac} is rational; "
                    + "eigenvalues need not be simple"
                )
    return flags


def rect_pleijel(lengths: Sequence[float]) -> PleijelEstimate:
    """Pl of the orthotope (0,a_1) x ... x (0,a_N): rho(N) for any side lengths.

    The constant does not depend on the a_i; it requires every a_i^2/a_j^2
    to be irrational, which floating point cannot decide. Numerically
    rational ratios are flagged.
    """
    lengths = [float(a) for a in lengths]
    N = _validate_dimension(len(lengths))
    if any(not (math.isfinite(a) and a > 0) for a in lengths):
        raise ValueError("Every side length must be a finite real > 0.")

    flags = rational_square_ratios(lengths)
    for flag in flags:
        logger.warning(flag)

    return PleijelEstimate(
        value=rho(N),
        method="closed_form",
        flags=flags,
        notes=["assumes every a_i^2/a_j^2 is irrational"],
    )
