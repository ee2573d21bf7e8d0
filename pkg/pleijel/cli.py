import functools
import os
from typing import Any, Callable, List, Optional, Sequence, Tuple

import click
import yaml
from rich.console import Console

from pleijel.boundary import BoundaryCondition
from pleijel.constants import (
    gamma_bound,
    gamma_ratio,
    pleijel_disk,
    pleijel_sector,
    rect_pleijel,
    rho,
    rho_ratio,
)
from pleijel.crossprod import (
    annulus_pleijel_surrogate,
    corollary_bound_audit,
    cross_zeros,
    degeneracy_scan,
    degenerate_combination_grid,
    fitted_c,
)
from pleijel.domains import AnnularSector, Annulus, Disk, Domain, Orthotope, Sector
from pleijel.output import OutputSpec, build_meta, emit_table
from pleijel.spectra import TRACE_COLUMNS, near_degeneracies, ratio_trace
from pleijel.special import bessel_zeros, bessel_zeros_prime, regime_diagnostics
from pleijel.utils import CONFIG_FILE, configureLogging, get_solver_params

red_x = "\u274C"  # Unicode code point for red "X" emoji
checkmark = "\u2705"  # Unicode code point for checkmark emoji

DOMAINS = ["disk", "sector", "annulus", "annular-sector", "orthotope"]


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    help="Logging level of the pleijel logger.",
)
def pleijelcli(log_level: str) -> None:
    """Pleijel constants, Bessel zeros and nodal-count traces."""
    configureLogging(log_level.upper())


def output_options(func: Callable) -> Callable:
    @click.option(
        "--format",
        "fmt",
        type=click.Choice(["csv", "json"]),
        default="csv",
        help="Table format.",
    )
    @click.option(
        "--output",
        type=str,
        default=None,
        help="File to write the table to. Defaults to standard output.",
    )
    @click.option(
        "--precision",
        type=click.IntRange(4, 17),
        default=12,
        help="Significant digits of floats.",
    )
    @functools.wraps(func)
    def wrapper(*args: Any, fmt: str, output: Optional[str], precision: int, **kwargs: Any) -> Any:
        spec = OutputSpec(format=fmt, path=output, precision=precision)
        return func(*args, spec=spec, **kwargs)

    return wrapper


def domain_options(func: Callable) -> Callable:
    @click.option("--domain", "kind", type=click.Choice(DOMAINS), default="disk")
    @click.option(
        "--lengths",
        type=str,
        default=None,
        help="Comma-separated side lengths of the orthotope.",
    )
    @click.option("--alpha", type=float, default=None, help="Sector opening angle.")
    @click.option("--r", "radius", type=float, default=None, help="Inner radius.")
    @functools.wraps(func)
    def wrapper(
        *args: Any,
        kind: str,
        lengths: Optional[str],
        alpha: Optional[float],
        radius: Optional[float],
        **kwargs: Any,
    ) -> Any:
        try:
            domain = build_domain(kind, lengths, alpha, radius)
        except ValueError as e:
            raise click.UsageError(str(e))
        return func(*args, domain=domain, **kwargs)

    return wrapper


def _require(value: Optional[float], name: str, kind: str) -> float:
    if value is None:
        raise ValueError(f"--{name} is required for --domain {kind}.")
    return value


def build_domain(
    kind: str,
    lengths: Optional[str] = None,
    alpha: Optional[float] = None,
    radius: Optional[float] = None,
) -> Domain:
    if kind == "disk":
        return Disk()
    if kind == "sector":
        return Sector(alpha=_require(alpha, "alpha", kind))
    if kind == "annulus":
        return Annulus(r=_require(radius, "r", kind))
    if kind == "annular-sector":
        return AnnularSector(
            r=_require(radius, "r", kind), alpha=_require(alpha, "alpha", kind)
        )
    if lengths is None:
        raise ValueError("--lengths is required for --domain orthotope.")
    return Orthotope(lengths=parse_floats(lengths))


def parse_floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"Expected comma-separated numbers, got {text!r}.")


def parse_pair(text: str) -> Tuple[float, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise click.BadParameter(f"Expected 'order,index', got {text!r}.")
    try:
        return float(parts[0]), int(parts[1])
    except ValueError:
        raise click.BadParameter(f"Expected 'order,index', got {text!r}.")


def parse_range(text: str) -> Tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise click.BadParameter(f"Expected 'lo:hi', got {text!r}.")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise click.BadParameter(f"Expected 'lo:hi', got {text!r}.")


def check_k_range(k_min: int, k_max: int) -> None:
    if k_min > k_max:
        raise click.UsageError(f"--k-min ({k_min}) must not exceed --k-max ({k_max}).")


def format_mode(mode: Sequence[float]) -> str:
    return ",".join(f"{m:g}" if isinstance(m, float) else str(m) for m in mode)


def run_reported(status: str, compute: Callable[[], Any]) -> Any:
    """Runs `compute` under a spinner; wrapped-op errors exit with status 1."""
    console = Console(stderr=True)
    with console.status(status, spinner="dots"):
        try:
            return compute()
        except (ValueError, ArithmeticError, RuntimeError) as e:
            message = str(e).splitlines()[0] if str(e) else type(e).__name__
            click.echo(f"{red_x} {message}", err=True)
            raise click.exceptions.Exit(1)


def report(message: str) -> None:
    click.echo(f"{checkmark} {message}", err=True)


def warn_flags(flags: Sequence[str]) -> None:
    for flag in flags:
        click.echo(f"{red_x} {flag}", err=True)


@pleijelcli.command("init", epilog="Example usage:\n pleijel init")
def init() -> None:
    """Initializes a .pleijelrc.yml with the solver defaults."""
    # If .pleijelrc.yml already exists, do nothing
    if os.path.exists(CONFIG_FILE):
        click.echo(f"A {CONFIG_FILE} file already exists in this directory.")
        return

    console = Console()
    params = get_solver_params()
    config = {f"PLEIJEL_{k.upper()}": v for k, v in params.model_dump().items()}

    with console.status(f"Creating {CONFIG_FILE}", spinner="dots"):
        with open(CONFIG_FILE, "w") as f:
            yaml.dump(config, f)

    click.echo(f"{checkmark} Created {CONFIG_FILE} in current directory {os.getcwd()}.")


@pleijelcli.command("constants", epilog="Example usage:\n pleijel constants --n-max 10")
@click.option("--n-max", type=click.IntRange(min=2), required=True, help="Largest N.")
@output_options
def constants(n_max: int, spec: OutputSpec) -> None:
    """Tabulates gamma(N), rho(N) and their consecutive ratios for N = 2..N_max."""

    def compute() -> List[List[float]]:
        return [
            [N, gamma_bound(N), rho(N), gamma_ratio(N), rho_ratio(N)]
            for N in range(2, n_max + 1)
        ]

    rows = run_reported("Computing constants", compute)
    emit_table(
        ["N", "gamma", "rho", "gamma_ratio", "rho_ratio"],
        rows,
        spec,
        build_meta(tolerances=get_solver_params().tolerances()),
    )


@pleijelcli.command("disk", epilog="Example usage:\n pleijel disk --tolerance 1e-8")
@click.option("--tolerance", type=float, default=1e-10, help="Accuracy of x0.")
@output_options
def disk(tolerance: float, spec: OutputSpec) -> None:
    """Pl(B) = 8 sup x cos^2 theta(x), with its maximizer x0."""
    estimate = run_reported("Maximizing", lambda: pleijel_disk(tolerance))
    warn_flags(estimate.flags)
    emit_table(
        ["value", "argmax_x", "theta", "tolerance"],
        [[estimate.value, estimate.argmax_x, estimate.theta_at_argmax, estimate.tolerance]],
        spec,
        build_meta(domain=Disk().model_dump(), method=estimate.method),
    )


@pleijelcli.command("sector", epilog="Example usage:\n pleijel sector --alpha 1")
@click.option("--alpha", type=float, required=True, help="Opening angle.")
@click.option("--tolerance", type=float, default=1e-10, help="Accuracy of x0.")
@output_options
def sector(alpha: float, tolerance: float, spec: OutputSpec) -> None:
    """Pl of the sector of angle alpha and its angular density pi x0 / alpha."""
    estimate = run_reported("Maximizing", lambda: pleijel_sector(alpha, tolerance))
    warn_flags(estimate.flags)
    emit_table(
        ["alpha", "value", "argmax_x", "density", "simple"],
        [[alpha, estimate.value, estimate.argmax_x, estimate.density, not estimate.flags]],
        spec,
        build_meta(domain={"kind": "sector", "alpha": alpha}, flags=estimate.flags),
    )


@pleijelcli.command("rect", epilog="Example usage:\n pleijel rect 1 1.189207115")
@click.argument("lengths", type=float, nargs=-1, required=True)
@output_options
def rect(lengths: Tuple[float, ...], spec: OutputSpec) -> None:
    """rho(N) for the orthotope with the given side lengths."""
    estimate = run_reported("Computing rho", lambda: rect_pleijel(lengths))
    warn_flags(estimate.flags)
    emit_table(
        ["N", "value"],
        [[len(lengths), estimate.value]],
        spec,
        build_meta(
            domain={"kind": "orthotope", "lengths": list(lengths)},
            flags=estimate.flags,
            notes=estimate.notes,
        ),
    )


@pleijelcli.command("zeros", epilog="Example usage:\n pleijel zeros --order 0 --k-max 5")
@click.option("--order", type=float, required=True, help="Bessel order nu.")
@click.option("--k-min", type=click.IntRange(min=1), default=1)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@click.option("--prime", is_flag=True, help="Zeros of J_nu' instead of J_nu.")
@output_options
def zeros(order: float, k_min: int, k_max: int, prime: bool, spec: OutputSpec) -> None:
    """Positive zeros j_{nu,k} (or j'_{nu,k}) for k in [k_min, k_max]."""
    check_k_range(k_min, k_max)
    params = get_solver_params()
    finder = bessel_zeros_prime if prime else bessel_zeros
    values = run_reported("Finding zeros", lambda: finder(order, k_max, params))
    emit_table(
        ["nu", "k", "zero"],
        [[order, k, values[k - 1]] for k in range(k_min, k_max + 1)],
        spec,
        build_meta(tolerances=params.tolerances(), prime=prime),
    )


@pleijelcli.command(
    "cross", epilog="Example usage:\n pleijel cross --order 3 --r 0.1 --k-max 4"
)
@click.option("--order", type=float, required=True, help="Bessel order nu.")
@click.option("--r", "radius", type=float, required=True, help="Inner radius.")
@click.option("--k-min", type=click.IntRange(min=1), default=1)
@click.option("--k-max", type=click.IntRange(min=1), required=True)
@output_options
def cross(order: float, radius: float, k_min: int, k_max: int, spec: OutputSpec) -> None:
    """Cross-product zeros a_{nu,k}(r) and the annulus eigenvalues a^2."""
    check_k_range(k_min, k_max)
    params = get_solver_params()

    def compute() -> Tuple[List[Any], float]:
        found = cross_zeros(order, radius, k_max, params)
        ks = list(range(k_min, k_max + 1))
        return found, fitted_c([order], ks, radius, params)

    found, c = run_reported("Finding cross zeros", compute)
    report(f"Fitted C in a^2 >= C k^2 + nu^2: {c:.{spec.precision}g}")
    emit_table(
        ["nu", "k", "r", "a", "lambda"],
        [[z.nu, z.k, z.r, z.a, z.lam] for z in found[k_min - 1 :]],
        spec,
        build_meta(
            domain={"kind": "annulus", "r": radius},
            tolerances=params.tolerances(),
            fitted_c=c,
        ),
    )


@pleijelcli.command(
    "trace",
    epilog="Example usage:\n pleijel trace --domain disk --lambda-max 100",
)
@domain_options
@click.option("--lambda-max", type=float, required=True)
@click.option("--lambda-min", type=float, default=0.0, help="Emit rows from here on.")
@click.option(
    "--bc",
    type=click.Choice([bc.value for bc in BoundaryCondition]),
    default="dirichlet",
)
@click.option("--workers", type=click.IntRange(min=1), default=None)
@output_options
def trace(
    domain: Domain,
    lambda_max: float,
    lambda_min: float,
    bc: str,
    workers: Optional[int],
    spec: OutputSpec,
) -> None:
    """Empirical Pleijel ratios mu(phi_n) / n with their running sup."""
    params = get_solver_params()
    num_workers = min(workers or 1, params.max_workers)
    result = run_reported(
        "Enumerating spectrum",
        lambda: ratio_trace(domain, lambda_max, bc, lambda_min, params, num_workers),
    )
    report(
        f"{len(result.rows)} rows, final running sup {result.running_sup:.{spec.precision}g}"
    )
    emit_table(
        TRACE_COLUMNS,
        result.table(),
        spec,
        build_meta(
            domain=domain.model_dump(),
            tolerances=params.tolerances(),
            bc=bc,
            lambda_max=lambda_max,
            lambda_min=lambda_min,
            prop_regime=result.prop_regime,
        ),
    )


@pleijelcli.command(
    "degeneracies",
    epilog="Example usage:\n pleijel degeneracies --domain annulus --r 0.044951 "
    + "--lambda-max 50 --gap-tol 1e-3",
)
@domain_options
@click.option("--lambda-max", type=float, required=True)
@click.option("--gap-tol", type=float, default=1e-6, help="Relative gap threshold.")
@output_options
def degeneracies(domain: Domain, lambda_max: float, gap_tol: float, spec: OutputSpec) -> None:
    """Pairs of distinct modes with nearly equal eigenvalues."""
    params = get_solver_params()
    result = run_reported(
        "Auditing degeneracies",
        lambda: near_degeneracies(domain, lambda_max, gap_tol, params=params),
    )
    emit_table(
        ["mode_a", "mode_b", "lambda_a", "lambda_b", "gap"],
        [
            [format_mode(p.mode_a), format_mode(p.mode_b), p.lam_a, p.lam_b, p.gap]
            for p in result.pairs
        ],
        spec,
        build_meta(domain=domain.model_dump(), tolerances=params.tolerances()),
    )


@pleijelcli.command(
    "scan",
    epilog="Example usage:\n pleijel scan --pair 3,1 --pair 0,2 --r 0.01:0.1",
)
@click.option("--pair", "pairs", type=str, multiple=True, required=True)
@click.option("--r", "r_range", type=str, required=True, help="Radius bracket lo:hi.")
@output_options
def scan(pairs: Tuple[str, ...], r_range: str, spec: OutputSpec) -> None:
    """Finds the inner radius at which two annulus eigenvalues coincide."""
    if len(pairs) != 2:
        raise click.UsageError("Pass exactly two --pair options.")
    pair_a, pair_b = parse_pair(pairs[0]), parse_pair(pairs[1])
    r_lo, r_hi = parse_range(r_range)
    params = get_solver_params()

    def compute() -> Any:
        found = degeneracy_scan(pair_a, pair_b, r_lo, r_hi, params)
        if found is None:
            raise ValueError(
                f"a{pair_a} - a{pair_b} does not change sign on [{r_lo}, {r_hi}]."
            )
        return found

    found = run_reported("Scanning radii", compute)
    emit_table(
        ["pair_a", "pair_b", "r0", "a", "lambda", "gap"],
        [
            [
                format_mode(found.pair_a),
                format_mode(found.pair_b),
                found.r0,
                found.a,
                found.lam,
                found.gap,
            ]
        ],
        spec,
        build_meta(tolerances=params.tolerances()),
    )


@pleijelcli.command(
    "surrogate",
    epilog="Example usage:\n pleijel surrogate --r 0.5 --x-min 0.1 --x-max 1 "
    + "--x-num 10 --k-max 64",
)
@click.option("--r", "radius", type=float, required=True, help="Inner radius.")
@click.option("--x-min", type=float, required=True)
@click.option("--x-max", type=float, required=True)
@click.option("--x-num", type=click.IntRange(min=1), default=10)
@click.option("--k-max", type=click.IntRange(min=8), default=64)
@output_options
def surrogate(
    radius: float, x_min: float, x_max: float, x_num: int, k_max: int, spec: OutputSpec
) -> None:
    """Finite-k surrogate of the annulus Pleijel constant."""
    if x_num == 1:
        x_grid = [x_min]
    else:
        x_grid = [x_min + (x_max - x_min) * i / (x_num - 1) for i in range(x_num)]
    params = get_solver_params()
    result = run_reported(
        "Evaluating surrogate",
        lambda: annulus_pleijel_surrogate(radius, x_grid, k_max, params),
    )
    report(
        f"Surrogate {result.estimate.value:.{spec.precision}g} at x={result.argmax_x:g}, "
        + f"fitted C {result.fitted_c:.{spec.precision}g}"
    )
    emit_table(
        ["x", "k", "order", "a", "k2_over_a2"],
        [[row.x, row.k, row.order, row.a, row.k2_over_a2] for row in result.table],
        spec,
        build_meta(
            domain={"kind": "annulus", "r": radius},
            tolerances=params.tolerances(),
            estimate=result.estimate.value,
            argmax_x=result.argmax_x,
            fitted_c=result.fitted_c,
        ),
    )


@pleijelcli.command(
    "audit", epilog="Example usage:\n pleijel audit --r 0.5 --x 0.4 --k 8 --k 16"
)
@click.option("--r", "radius", type=float, required=True, help="Inner radius.")
@click.option("--x", type=float, required=True, help="Ratio nu / k.")
@click.option("--k", "ks", type=click.IntRange(min=1), multiple=True, required=True)
@output_options
def audit(radius: float, x: float, ks: Tuple[int, ...], spec: OutputSpec) -> None:
    """Checks a_{kx,k} > 3.4 k / sqrt(1 - r^2) for each k."""
    params = get_solver_params()
    rows = run_reported(
        "Auditing bound", lambda: corollary_bound_audit(radius, x, ks, params)
    )
    emit_table(
        ["k", "order", "a", "bound", "passed"],
        [[row.k, row.order, row.a, row.bound, row.passed] for row in rows],
        spec,
        build_meta(domain={"kind": "annulus", "r": radius}, tolerances=params.tolerances()),
    )


@pleijelcli.command(
    "combo",
    epilog="Example usage:\n pleijel combo --r 0.044951 --pair 3,1 --pair 0,2",
)
@click.option("--r", "radius", type=float, required=True, help="Inner radius.")
@click.option("--pair", "pairs", type=str, multiple=True, required=True)
@click.option("--c1", type=float, default=1.0)
@click.option("--c2", type=float, default=1.0)
@click.option("--n-rho", type=click.IntRange(min=2), default=64)
@click.option("--n-theta", type=click.IntRange(min=2), default=128)
@output_options
def combo(
    radius: float,
    pairs: Tuple[str, ...],
    c1: float,
    c2: float,
    n_rho: int,
    n_theta: int,
    spec: OutputSpec,
) -> None:
    """Samples C1 psi_A + C2 psi_B for two annulus modes on a polar grid."""
    if len(pairs) != 2:
        raise click.UsageError("Pass exactly two --pair options.")
    pair_a, pair_b = parse_pair(pairs[0]), parse_pair(pairs[1])
    params = get_solver_params()
    df = run_reported(
        "Sampling modes",
        lambda: degenerate_combination_grid(
            radius, pair_a, pair_b, c1, c2, n_rho, n_theta, params
        ),
    )
    emit_table(
        list(df.columns),
        df.values.tolist(),
        spec,
        build_meta(domain={"kind": "annulus", "r": radius}, c1=c1, c2=c2),
    )


@pleijelcli.command("diagnostics", hidden=True)
@click.option("--order", "orders", type=float, multiple=True, required=True)
@click.option("--x", "xs", type=float, multiple=True, required=True)
@output_options
def diagnostics(orders: Tuple[float, ...], xs: Tuple[float, ...], spec: OutputSpec) -> None:
    """Evaluation regimes and Wronskian residuals on an (nu, x) grid."""
    params = get_solver_params()
    df = run_reported("Evaluating", lambda: regime_diagnostics(orders, xs, params))
    rows: List[List[Any]] = [
        [row["x"], row["nu"], row["regime"], row["value"], row["est_error"]]
        for row in df.to_dict("records")
    ]
    emit_table(list(df.columns), rows, spec, build_meta(tolerances=params.tolerances()))


if __name__ == "__main__":
    pleijelcli()
