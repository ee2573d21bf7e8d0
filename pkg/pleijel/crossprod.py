"""
Cross-products of Bessel functions, J_nu(rz) Y_nu(z) - J_nu(z) Y_nu(rz),
whose zeros a_{nu,k}(r) are the square roots of the Dirichlet eigenvalues
of the annulus r < |x| < 1 and of its sectors.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field
from scipy import optimize, special

from pleijel.constants import PleijelEstimate
from pleijel.errors import ConvergenceError
from pleijel.special import (
    cached_sequence,
    eval_bessel,
    refine_root,
    scan_bracket,
    validate_argument,
    validate_index,
    validate_order,
)
from pleijel.utils import SolverParams, get_solver_params, order_key

logger = logging.getLogger(__name__)

# Lower bound shared by every annulus zero: a_{0,1}(r) is the ground state
# of a subdomain of the unit disk, so it exceeds j_{0,1} = 2.4048...
ANNULUS_FLOOR = 2.4

# Slack o(k) in the corollary lower bound a_{kx,k} > 3.4 k / sqrt(1 - r^2)
COROLLARY_CONSTANT = 3.4

# Relative gap below which two cross zeros count as coincident.
DEGENERACY_RTOL = 1e-8

ModePair = Tuple[float, int]


class CrossZero(BaseModel, frozen=True):
    """The k-th positive zero a_{nu,k}(r) of the cross-product."""

    nu: float = Field(..., ge=0, description="Order.")
    k: int = Field(..., ge=1, description="Zero index.")
    r: float = Field(..., gt=0, lt=1, description="Inner radius of the annulus.")
    a: float = Field(..., gt=0, description="The zero a_{nu,k}(r).")

    @property
    def lam(self) -> float:
        """Eigenvalue a^2."""
        return self.a * self.a


def validate_radius(r: float, params: SolverParams) -> float:
    r = float(r)
    if not (0 < r < 1):
        raise ValueError(f"Inner radius must lie in (0, 1), got {r!r}.")
    if r > params.r_max:
        raise ValueError(
            f"Inner radius {r!r} is closer to 1 than the configured margin "
            + f"r_max={params.r_max!r} allows."
        )
    return r


def cross_product(
    order: float, r: float, z: float, params: Optional[SolverParams] = None
) -> float:
    """Evaluates J_nu(rz) Y_nu(z) - J_nu(z) Y_nu(rz).

    Raises:
        OverflowRegimeError: If Y_nu(rz) is not representable, or J_nu(rz)
            has underflowed.
    """
    params = get_solver_params(params)
    nu = validate_order(order, params)
    r = validate_radius(r, params)
    z = validate_argument(z, params)

    inner = eval_bessel(nu, r * z, params)
    outer = eval_bessel(nu, z, params)
    return inner.j * outer.y - outer.j * inner.y


def _scaled_cross(nu: float, r: float, z: float) -> float:
    # Cross-product divided by max(1, |Y_nu(rz)|): continuous, same zeros,
    # finite where Y_nu(rz) overflows (there the J_nu(rz) term vanishes).
    rz = r * z
    yr = float(special.yv(nu, rz))
    jz = float(special.jv(nu, z))
    if not math.isfinite(yr):
        return jz if yr < 0 else -jz
    scale = max(1.0, abs(yr))
    jr = float(special.jv(nu, rz))
    yz = float(special.yv(nu, z))
    if not math.isfinite(yz):
        return jz if yr < 0 else -jz
    return (jr / scale) * yz - jz * (yr / scale)


def mcmahon_cross_guess(k: int, r: float) -> float:
    """McMahon's leading term pi k / (1 - r) for a_{0,k}(r)."""
    k = validate_index(k)
    if not (0 < r < 1):
        raise ValueError(f"Inner radius must lie in (0, 1), got {r!r}.")
    return math.pi * k / (1 - r)


def cross_zeros(
    order: float, r: float, k_max: int, params: Optional[SolverParams] = None
) -> List[CrossZero]:
    """Returns the first `k_max` zeros a_{nu,1}(r) < ... < a_{nu,k_max}(r).

    Zeros are spaced roughly pi / (1 - r) apart, so the bracket scan steps by
    an eighth of that. The first zero is searched from the wall
    sqrt(nu^2 + a_{0,1}^2) (McCann's inequality for cross-products), the
    k-th from just above the (k-1)-th.
    """
    params = get_solver_params(params)
    nu = validate_order(order, params)
    r = validate_radius(r, params)
    k_max = validate_index(k_max)
    step = mcmahon_cross_guess(1, r) / 8

    def f(z: float) -> float:
        return _scaled_cross(nu, r, z)

    def extend(zeros: List[float], k_max: int) -> List[float]:
        zeros = list(zeros)
        while len(zeros) < k_max:
            k = len(zeros) + 1
            if zeros:
                start = zeros[-1] + step / 2
            elif nu == 0:
                start = ANNULUS_FLOOR
            else:
                a01 = cross_zeros(0, r, 1, params)[0].a
                start = max(ANNULUS_FLOOR, nu, math.hypot(nu, a01) - step)
            lo, hi = scan_bracket(f, start, step, params.scan_max_steps, (nu, k, r))
            zeros.append(refine_root(f, None, lo, hi, params, (nu, k, r)))
        logger.debug(f"Computed {len(zeros)} cross zeros for nu={nu}, r={r}.")
        return zeros

    key = ("a", order_key(nu), order_key(r))
    values = cached_sequence(key, k_max, extend, params)
    return [CrossZero(nu=nu, k=i + 1, r=r, a=a) for i, a in enumerate(values)]


def cross_zero(
    order: float, k: int, r: float, params: Optional[SolverParams] = None
) -> CrossZero:
    """Returns the k-th positive zero a_{nu,k}(r)."""
    k = validate_index(k)
    return cross_zeros(order, r, k, params)[k - 1]


def fitted_c(
    orders: Sequence[float],
    ks: Sequence[int],
    r: float,
    params: Optional[SolverParams] = None,
) -> float:
    """Empirical C in a_{nu,k}^2 >= C k^2 + nu^2: min of (a^2 - nu^2) / k^2."""
    params = get_solver_params(params)
    best = math.inf
    k_top = max(ks)
    for nu in orders:
        zeros = cross_zeros(nu, r, k_top, params)
        for k in ks:
            a = zeros[k - 1].a
            best = min(best, (a * a - nu * nu) / (k * k))
    return best


class Degeneracy(BaseModel):
    """A radius at which two cross-product zeros coincide."""

    pair_a: Tuple[float, int]
    pair_b: Tuple[float, int]
    r0: float = Field(..., gt=0, lt=1, description="Crossing radius.")
    a: float = Field(..., gt=0, description="Common zero at r0.")
    lam: float = Field(..., gt=0, description="Common eigenvalue a^2.")
    gap: float = Field(..., ge=0, description="|a_A(r0) - a_B(r0)|.")


def degeneracy_scan(
    pair_a: ModePair,
    pair_b: ModePair,
    r_lo: float,
    r_hi: float,
    params: Optional[SolverParams] = None,
) -> Optional[Degeneracy]:
    """Finds r0 in [r_lo, r_hi] with a_{pair_a}(r0) = a_{pair_b}(r0).

    Args:
        pair_a ((float, int)): (order, index) of the first zero.
        pair_b ((float, int)): (order, index) of the second zero.
        r_lo (float): Left end of the radius bracket.
        r_hi (float): Right end of the radius bracket.

    Raises:
        ValueError: If the pairs are identical or the bracket is empty.
        ConvergenceError: If the root finder fails inside a valid bracket.

    Returns:
        Optional[Degeneracy]: The crossing, or None when the difference does
            not change sign on the bracket.
    """
    params = get_solver_params(params)
    first = (float(pair_a[0]), validate_index(pair_a[1]))
    second = (float(pair_b[0]), validate_index(pair_b[1]))
    if first == second:
        raise ValueError(
            f"Identical pairs {first} never cross transversally; "
            + "pass two distinct (order, index) pairs."
        )
    if not r_lo < r_hi:
        raise ValueError(f"Need r_lo < r_hi, got [{r_lo!r}, {r_hi!r}].")
    validate_radius(r_lo, params)
    validate_radius(r_hi, params)

    # Canonical order makes the result independent of argument order
    first, second = sorted([first, second])

    def difference(r: float) -> float:
        return (
            cross_zero(first[0], first[1], r, params).a
            - cross_zero(second[0], second[1], r, params).a
        )

    d_lo, d_hi = difference(r_lo), difference(r_hi)
    logger.info(
        f"Degeneracy scan {first} vs {second}: d({r_lo})={d_lo!r}, d({r_hi})={d_hi!r}"
    )
    if d_lo * d_hi > 0:
        return None

    try:
        r0, info = optimize.brentq(
            difference,
            r_lo,
            r_hi,
            xtol=1e-14,
            rtol=1e-13,
            maxiter=params.max_iter,
            full_output=True,
            disp=False,
        )
    except (ValueError, RuntimeError) as e:
        raise ConvergenceError(
            f"Degeneracy scan failed: {e}", (r_lo, r_hi), (d_lo, d_hi)
        ) from e
    if not info.converged:
        raise ConvergenceError(
            "Degeneracy scan did not converge",
            (r_lo, r_hi),
            (d_lo, d_hi),
            info.iterations,
        )

    a = cross_zero(first[0], first[1], r0, params).a
    gap = abs(difference(r0))
    if gap > DEGENERACY_RTOL * a:
        logger.warning(
            f"Crossing at r0={r0!r} leaves a gap {gap!r} above the coincidence "
            + f"tolerance {DEGENERACY_RTOL * a!r}."
        )
    return Degeneracy(
        pair_a=(float(pair_a[0]), int(pair_a[1])),
        pair_b=(float(pair_b[0]), int(pair_b[1])),
        r0=r0,
        a=a,
        lam=a * a,
        gap=gap,
    )


class SurrogateRow(BaseModel):
    x: float
    k: int
    order: float
    a: float
    k2_over_a2: float


class SurrogateTrend(BaseModel):
    x: float
    last_octave_delta: float = Field(
        ..., description="k^2/a^2 at k_max minus its value at k_max/2."
    )
    monotone: bool = Field(..., description="k^2/a^2 is monotone over the ladder.")


class AnnulusSurrogate(BaseModel):
    """Finite-k surrogate of Pl(A_r); not a limit."""

    r: float
    k_max: int
    estimate: PleijelEstimate
    argmax_x: float
    table: List[SurrogateRow]
    trends: List[SurrogateTrend]
    fitted_c: float = Field(
        ..., description="Empirical C in a^2 >= C k^2 + nu^2 over the table."
    )


def octave_ladder(k_max: int) -> List[int]:
    """k_max/8, k_max/4, k_max/2, k_max (ascending, deduplicated)."""
    return sorted({max(1, k_max // d) for d in (8, 4, 2, 1)})


def _surrogate_table(
    r: float,
    x_grid: Sequence[float],
    ladder: Sequence[int],
    order_of: Callable[[int, float], float],
    params: SolverParams,
) -> List[SurrogateRow]:
    rows = []
    for x in x_grid:
        for k in ladder:
            nu = order_of(k, x)
            a = cross_zero(nu, k, r, params).a
            rows.append(
                SurrogateRow(x=x, k=k, order=nu, a=a, k2_over_a2=k * k / (a * a))
            )
    return rows


def annulus_pleijel_surrogate(
    r: float,
    x_grid: Sequence[float],
    k_max: int,
    params: Optional[SolverParams] = None,
) -> AnnulusSurrogate:
    """Finite-k surrogate of Pl(A_r) = 8/(1-r^2) sup_x x limsup_k k^2/a_{kx,k}^2.

    The limsup is replaced by its value at k = k_max; the order kx is used
    as a real order. The table carries the octave ladder k_max/8 ... k_max
    for each x so the convergence in k can be judged.
    """
    params = get_solver_params(params)
    r = validate_radius(r, params)
    x_grid = [float(x) for x in x_grid]
    if not x_grid:
        raise ValueError("x_grid must be nonempty.")
    if any(not (math.isfinite(x) and x > 0) for x in x_grid):
        raise ValueError("Every x in x_grid must be a finite real > 0.")
    k_max = validate_index(k_max)
    if k_max < 8:
        raise ValueError(f"k_max must be >= 8, got {k_max}.")

    ladder = octave_ladder(k_max)
    table = _surrogate_table(r, x_grid, ladder, lambda k, x: k * x, params)

    prefactor = 8 / (1 - r * r)
    trends = []
    best_value, best_x = -math.inf, x_grid[0]
    for x in x_grid:
        series = [row.k2_over_a2 for row in table if row.x == x]
        diffs = np.diff(series)
        trends.append(
            SurrogateTrend(
                x=x,
                last_octave_delta=series[-1] - series[-2],
                monotone=bool(np.all(diffs >= 0) or np.all(diffs <= 0)),
            )
        )
        value = prefactor * x * series[-1]
        if value > best_value:
            best_value, best_x = value, x

    c = min((row.a ** 2 - row.order ** 2) / row.k ** 2 for row in table)
    estimate = PleijelEstimate(
        value=best_value,
        argmax_x=best_x,
        method="annulus_surrogate",
        tolerance=abs(
            prefactor * best_x * next(t.last_octave_delta for t in trends if t.x == best_x)
        ),
        notes=[f"finite-k surrogate at k={k_max}; the limsup is not extrapolated"],
    )
    logger.info(f"Annulus surrogate r={r}: {best_value!r} at x={best_x!r}")
    return AnnulusSurrogate(
        r=r,
        k_max=k_max,
        estimate=estimate,
        argmax_x=best_x,
        table=table,
        trends=trends,
        fitted_c=c,
    )


class AuditRow(BaseModel):
    k: int
    order: float
    a: float
    bound: float
    passed: bool


def corollary_bound_audit(
    r: float,
    x: float,
    k_list: Sequence[int],
    params: Optional[SolverParams] = None,
) -> List[AuditRow]:
    """Checks a_{kx,k} > 3.4 k / sqrt(1 - r^2) for each k.

    The bound holds up to o(k), so failures at small k are reported in the
    rows, not raised.
    """
    params = get_solver_params(params)
    r = validate_radius(r, params)
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"x must be a finite real > 0, got {x!r}.")

    rows = []
    for k in k_list:
        k = validate_index(k)
        nu = k * x
        a = cross_zero(nu, k, r, params).a
        bound = COROLLARY_CONSTANT * k / math.sqrt(1 - r * r)
        rows.append(AuditRow(k=k, order=nu, a=a, bound=bound, passed=a > bound))
        if a <= bound:
            logger.warning(
                f"Corollary bound not met at k={k} (a={a!r} <= {bound!r}); "
                + "the bound only holds up to o(k)."
            )
    return rows


def annulus_mode_value(
    order: float, a: float, rho: np.ndarray, theta: np.ndarray
) -> np.ndarray:
    """psi(rho, theta) = (J_nu(a rho) Y_nu(a) - J_nu(a) Y_nu(a rho)) cos(nu theta)."""
    radial = special.jv(order, a * rho) * special.yv(order, a) - special.jv(
        order, a
    ) * special.yv(order, a * rho)
    return radial * np.cos(order * theta)


def degenerate_combination_grid(
    r: float,
    pair_a: ModePair,
    pair_b: ModePair,
    c1: float = 1.0,
    c2: float = 1.0,
    n_rho: int = 64,
    n_theta: int = 128,
    params: Optional[SolverParams] = None,
) -> pd.DataFrame:
    """Samples C1 psi_A + C2 psi_B on a polar grid of the annulus A_r.

    Each mode is normalized by its maximum modulus on the grid so the
    coefficients weigh comparable functions. Returns columns x, y, value.
    """
    params = get_solver_params(params)
    r = validate_radius(r, params)
    if n_rho < 2 or n_theta < 2:
        raise ValueError("n_rho and n_theta must be >= 2.")

    rho, theta = np.meshgrid(
        np.linspace(r, 1.0, n_rho),
        np.linspace(0.0, 2 * math.pi, n_theta, endpoint=False),
        indexing="ij",
    )
    total = np.zeros_like(rho)
    for (nu, k), c in ((pair_a, c1), (pair_b, c2)):
        a = cross_zero(nu, k, r, params).a
        psi = annulus_mode_value(nu, a, rho, theta)
        peak = np.max(np.abs(psi))
        total += c * (psi / peak if peak > 0 else psi)

    return pd.DataFrame(
        {
            "x": (rho * np.cos(theta)).ravel(),
            "y": (rho * np.sin(theta)).ravel(),
            "value": total.ravel(),
        }
    )
