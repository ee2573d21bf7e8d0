"""
Bessel functions J_nu, Y_nu of real order nu >= 0 and their zeros.

Values come from `scipy.special`; zeros are located by walking a bracket
upward from a proven lower wall (the McCann bound, or the previous zero)
and then refining with Brent's method and a Newton polish. Every zero
sequence is computed in order, so the k-th zero returned is always the
k-th positive zero.
"""

import logging
import math
import sys
from typing import Callable, Hashable, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field
from scipy import optimize, special

from pleijel.errors import CapExceededError, ConvergenceError, OverflowRegimeError
from pleijel.utils import SolverParams, ZeroCache, get_solver_params, order_key

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)

# Bracket-scan step for zeros of J_nu and J_nu'. Consecutive zeros are at
# least j_{0,2} - j_{0,1} > 3 apart for every order, so a step of pi/4 never
# steps over two zeros at once.
SCAN_STEP = math.pi / 4

# Largest accepted |(pi x / 2) W[J_nu, Y_nu](x) - 1|
WRONSKIAN_TOL = 1e-8

# Width above a zero guess still counted as inside the expected bracket
GUESS_SLACK = 2 * math.pi

_zero_cache = ZeroCache()


class BesselPair(BaseModel, frozen=True):
    """Values of J_nu, Y_nu and their derivatives at a single (nu, x)."""

    nu: float = Field(..., ge=0, description="Order.")
    x: float = Field(..., gt=0, description="Argument.")
    j: float = Field(..., description="J_nu(x)")
    y: float = Field(..., description="Y_nu(x)")
    jp: float = Field(..., description="J_nu'(x)")
    yp: float = Field(..., description="Y_nu'(x)")

    @property
    def envelope(self) -> float:
        """Local amplitude sqrt(J^2 + Y^2)."""
        return math.hypot(self.j, self.y)

    def wronskian_residual(self) -> float:
        """|(pi x / 2)(J Y' - J' Y) - 1|, zero for exact values."""
        return abs(0.5 * math.pi * self.x * (self.j * self.yp - self.jp * self.y) - 1)


def validate_order(order: float, params: SolverParams) -> float:
    nu = float(order)
    if not math.isfinite(nu) or nu < 0:
        raise ValueError(f"Order must be a finite real >= 0, got {order!r}.")
    if nu > params.nu_max:
        raise CapExceededError(
            f"Order {nu!r} exceeds the configured cap nu_max={params.nu_max!r}."
        )
    return nu


def validate_index(k: int) -> int:
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise ValueError(f"Zero index must be an integer >= 1, got {k!r}.")
    return int(k)


def validate_argument(x: float, params: SolverParams) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise ValueError(f"Argument must be a finite real > 0, got {x!r}.")
    if x > params.x_max:
        raise CapExceededError(
            f"Argument {x!r} exceeds the configured cap x_max={params.x_max!r}."
        )
    return x


def eval_bessel(
    order: float, x: float, params: Optional[SolverParams] = None
) -> BesselPair:
    """Evaluates J_nu(x), Y_nu(x), J_nu'(x) and Y_nu'(x).

    Args:
        order (float): Order nu >= 0.
        x (float): Argument, 0 < x <= x_max.
        params (SolverParams, optional): Caps; read from the environment
            if omitted.

    Raises:
        ValueError: If x <= 0 or the order is negative.
        CapExceededError: If the order or the argument exceeds its cap.
        OverflowRegimeError: If a component is not representable, which
            happens for Y_nu at small x and large nu, or if J_nu has
            underflowed so that the Wronskian residual exceeds 1e-8.

    Returns:
        BesselPair: The four values.
    """
    params = get_solver_params(params)
    nu = validate_order(order, params)
    x = validate_argument(x, params)

    j = float(special.jv(nu, x))
    y = float(special.yv(nu, x))
    jp = float(special.jvp(nu, x))
    yp = float(special.yvp(nu, x))

    components = (("J_nu", j), ("Y_nu", y), ("J_nu'", jp), ("Y_nu'", yp))
    for name, value in components:
        if not math.isfinite(value):
            raise OverflowRegimeError(nu, x, name)
    for name, value in components:
        if 0 < abs(value) < sys.float_info.min:
            raise OverflowRegimeError(nu, x, name, "is subnormal")

    pair = BesselPair(nu=nu, x=x, j=j, y=y, jp=jp, yp=yp)
    residual = pair.wronskian_residual()
    if residual > WRONSKIAN_TOL:
        # J_nu and J_nu' underflow to zero first while Y_nu is still finite
        name = min(components, key=lambda c: abs(c[1]))[0]
        raise OverflowRegimeError(
            nu, x, name, f"has underflowed (Wronskian residual {residual:.3g})"
        )
    return pair


def evaluation_regime(order: float, x: float) -> str:
    """Label of the (nu, x) region: series, transition or hankel."""
    if x <= max(10.0, order / 2):
        return "series"
    if x >= max(10.0, 2 * order):
        return "hankel"
    return "transition"


def regime_diagnostics(
    orders: Iterable[float],
    xs: Iterable[float],
    params: Optional[SolverParams] = None,
) -> pd.DataFrame:
    """Maintenance dump of evaluation regimes.

    Returns a frame with columns x, nu, regime, value (J_nu(x)) and
    est_error (the Wronskian residual at that point).
    """
    params = get_solver_params(params)
    rows = []
    xs = list(xs)
    for nu in orders:
        for x in xs:
            try:
                pair = eval_bessel(nu, x, params)
            except OverflowRegimeError:
                rows.append(
                    {
                        "x": x,
                        "nu": nu,
                        "regime": "overflow",
                        "value": float("nan"),
                        "est_error": float("nan"),
                    }
                )
                continue
            rows.append(
                {
                    "x": x,
                    "nu": nu,
                    "regime": evaluation_regime(nu, x),
                    "value": pair.j,
                    "est_error": pair.wronskian_residual(),
                }
            )
    return pd.DataFrame(rows, columns=["x", "nu", "regime", "value", "est_error"])


def mccann_bound(order: float, k: int) -> float:
    """McCann's lower bound (nu^2 + pi^2 (k - 1/4)^2)^(1/2) < j_{nu,k}."""
    if order < 0:
        raise ValueError(f"Order must be >= 0, got {order!r}.")
    k = validate_index(k)
    return math.sqrt(order * order + (math.pi * (k - 0.25)) ** 2)


def mcmahon_zero_guess(order: float, k: int) -> float:
    """McMahon's large-k expansion of j_{nu,k}."""
    mu = 4 * order * order
    beta = (k + order / 2 - 0.25) * math.pi
    return (
        beta
        - (mu - 1) / (8 * beta)
        - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * beta) ** 3)
    )


def olver_first_zero_guess(order: float) -> float:
    """Large-order estimate of j_{nu,1}."""
    if order < 1:
        return mcmahon_zero_guess(order, 1)
    c = order ** (1.0 / 3.0)
    return order + 1.8557571 * c + 1.033150 / c


def zero_guess(order: float, k: int) -> float:
    """Estimate of j_{nu,k}: Olver's for the first zero, McMahon's after it."""
    if k == 1:
        return olver_first_zero_guess(order)
    return mcmahon_zero_guess(order, k)


def expected_bracket(order: float, k: int) -> Tuple[float, float]:
    """(McCann bound, guess + GUESS_SLACK), the window j_{nu,k} should fall in.

    Only the lower end is proven. McMahon's expansion overshoots small k at
    large nu by more than a zero spacing, so the scan never starts from it.
    """
    return mccann_bound(order, k), zero_guess(order, k) + GUESS_SLACK


def _same_sign(a: float, b: float) -> bool:
    return (a > 0) == (b > 0) and a != 0 and b != 0


def scan_bracket(
    f: Callable[[float], float],
    start: float,
    step: float,
    max_steps: int,
    mode: Optional[Tuple] = None,
) -> Tuple[float, float]:
    """Walks upward from `start` in steps of `step` until f changes sign.

    Returns the first bracket (lo, hi) with a sign change. The caller
    guarantees that f has no zero in [start, zero sought) and that no two
    zeros are closer than `step`.
    """
    lo, flo = start, f(start)
    if not math.isfinite(flo):
        raise ConvergenceError(
            "Non-finite function value at scan start", (lo, lo), (flo, flo), 0, mode
        )
    for i in range(max_steps):
        hi = lo + step
        fhi = f(hi)
        if not math.isfinite(fhi):
            raise ConvergenceError(
                "Non-finite function value while scanning",
                (lo, hi),
                (flo, fhi),
                i,
                mode,
            )
        if not _same_sign(flo, fhi):
            return lo, hi
        lo, flo = hi, fhi

    raise ConvergenceError(
        "No sign change found", (start, lo), (f(start), flo), max_steps, mode
    )


def refine_root(
    f: Callable[[float], float],
    fprime: Optional[Callable[[float], float]],
    lo: float,
    hi: float,
    params: SolverParams,
    mode: Optional[Tuple] = None,
) -> float:
    """Brent's method on a sign-change bracket, then a Newton polish.

    The Newton result is kept only if it converged and stayed inside the
    bracket; otherwise the bracketed root stands.
    """
    rtol = max(params.zero_rtol, 4 * EPS)
    try:
        root, info = optimize.brentq(
            f,
            lo,
            hi,
            xtol=1e-300,
            rtol=rtol,
            maxiter=params.max_iter,
            full_output=True,
            disp=False,
        )
    except ValueError as e:
        raise ConvergenceError(str(e), (lo, hi), (f(lo), f(hi)), 0, mode) from e

    if not info.converged:
        raise ConvergenceError(
            f"Brent iteration did not converge: {info.flag}",
            (lo, hi),
            (f(lo), f(hi)),
            info.iterations,
            mode,
        )

    if fprime is None or f(root) == 0:
        return float(root)

    polished, pinfo = optimize.newton(
        f,
        root,
        fprime=fprime,
        tol=4 * EPS * abs(root),
        maxiter=8,
        full_output=True,
        disp=False,
    )
    if pinfo.converged and lo <= polished <= hi and abs(polished - root) <= rtol * abs(root):
        return float(polished)

    logger.debug(f"Newton polish rejected for mode {mode}; keeping {root!r}.")
    return float(root)


def cached_sequence(
    key: Hashable,
    k_max: int,
    extend: Callable[[List[float], int], List[float]],
    params: SolverParams,
) -> List[float]:
    zeros = _zero_cache.get(key) if params.zero_cache else []
    if len(zeros) < k_max:
        zeros = extend(zeros, k_max)
        if params.zero_cache:
            _zero_cache.extend(key, zeros)
    return zeros[:k_max]


def bessel_zeros(
    order: float, k_max: int, params: Optional[SolverParams] = None
) -> List[float]:
    """Returns [j_{nu,1}, ..., j_{nu,k_max}].

    Args:
        order (float): Order nu >= 0.
        k_max (int): Number of zeros.
        params (SolverParams, optional): Caps and tolerances.

    Raises:
        ConvergenceError: If a bracket cannot be found or refined.
        CapExceededError: If a zero exceeds x_max.
    """
    params = get_solver_params(params)
    nu = validate_order(order, params)
    k_max = validate_index(k_max)

    def f(x: float) -> float:
        return float(special.jv(nu, x))

    def fp(x: float) -> float:
        return float(special.jvp(nu, x))

    def extend(zeros: List[float], k_max: int) -> List[float]:
        zeros = list(zeros)
        while len(zeros) < k_max:
            k = len(zeros) + 1
            start, ceiling = expected_bracket(nu, k)
            if zeros:
                start = max(start, zeros[-1] + SCAN_STEP)
            lo, hi = scan_bracket(f, start, SCAN_STEP, params.scan_max_steps, (nu, k))
            z = refine_root(f, fp, lo, hi, params, (nu, k))
            if z > ceiling:
                logger.debug(
                    f"j_({nu},{k}) = {z!r} lies above the expected bracket "
                    + f"({start!r}, {ceiling!r}]."
                )
            elif k == 1:
                off = z - (ceiling - GUESS_SLACK)
                logger.debug(f"j_({nu},1) = {z!r}, first-zero guess off by {off:.3g}.")
            if z > params.x_max:
                raise CapExceededError(
                    f"Zero j_({nu},{k}) = {z!r} exceeds x_max={params.x_max!r}."
                )
            zeros.append(z)
        logger.debug(f"Computed {len(zeros)} zeros of J_{nu}.")
        return zeros

    return cached_sequence(("j", order_key(nu)), k_max, extend, params)


def bessel_zero(order: float, k: int, params: Optional[SolverParams] = None) -> float:
    """Returns j_{nu,k}, the k-th positive zero of J_nu."""
    k = validate_index(k)
    return bessel_zeros(order, k, params)[k - 1]


def bessel_zeros_prime(
    order: float, k_max: int, params: Optional[SolverParams] = None
) -> List[float]:
    """Returns [j'_{nu,1}, ..., j'_{nu,k_max}], positive zeros of J_nu'.

    For nu = 0 the trivial zero at x = 0 is excluded. Each zero is
    bracketed by consecutive zeros of J_nu: j_{0,k} < j'_{0,k} < j_{0,k+1},
    nu < j'_{nu,1} < j_{nu,1} and j_{nu,k-1} < j'_{nu,k} < j_{nu,k} for nu > 0.
    """
    params = get_solver_params(params)
    nu = validate_order(order, params)
    k_max = validate_index(k_max)

    def f(x: float) -> float:
        return float(special.jvp(nu, x))

    def fp(x: float) -> float:
        return float(special.jvp(nu, x, 2))

    def extend(zeros: List[float], k_max: int) -> List[float]:
        zeros = list(zeros)
        if nu == 0:
            walls = [0.0] + bessel_zeros(nu, k_max + 1, params)
            offset = 1
        else:
            walls = [nu] + bessel_zeros(nu, k_max, params)
            offset = 0
        while len(zeros) < k_max:
            k = len(zeros) + 1
            lo, hi = walls[k - 1 + offset], walls[k + offset]
            zeros.append(refine_root(f, fp, lo, hi, params, (nu, k)))
        return zeros

    return cached_sequence(("jp", order_key(nu)), k_max, extend, params)


def bessel_zero_prime(
    order: float, k: int, params: Optional[SolverParams] = None
) -> float:
    """Returns j'_{nu,k}, the k-th positive zero of J_nu'."""
    k = validate_index(k)
    return bessel_zeros_prime(order, k, params)[k - 1]


def clear_zero_cache() -> None:
    """Drops every memoized zero sequence."""
    _zero_cache.clear()
