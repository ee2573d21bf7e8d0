from pleijel.boundary import BoundaryCondition
from pleijel.constants import (
    PleijelEstimate,
    ThetaSolution,
    disk_objective,
    elbert_laforgia,
    gamma_bound,
    gamma_ratio,
    gautschi_step,
    pleijel_disk,
    pleijel_sector,
    rect_pleijel,
    rho,
    rho_ratio,
    sector_angular_density,
    solve_theta,
)
from pleijel.crossprod import (
    CrossZero,
    Degeneracy,
    annulus_mode_value,
    annulus_pleijel_surrogate,
    corollary_bound_audit,
    cross_product,
    cross_zero,
    cross_zeros,
    degeneracy_scan,
    degenerate_combination_grid,
    fitted_c,
    mcmahon_cross_guess,
)
from pleijel.domains import AnnularSector, Annulus, Disk, Orthotope, Sector
from pleijel.errors import CapExceededError, ConvergenceError, OverflowRegimeError
from pleijel.special import (
    BesselPair,
    bessel_zero,
    bessel_zero_prime,
    bessel_zeros,
    bessel_zeros_prime,
    eval_bessel,
    mccann_bound,
    mcmahon_zero_guess,
    olver_first_zero_guess,
    zero_guess,
    regime_diagnostics,
)
from pleijel.spectra import (
    EigenRecord,
    NearDegeneracyReport,
    RatioTrace,
    counting_function,
    enumerate_spectrum,
    near_degeneracies,
    nodal_count,
    ratio_trace,
    split_records,
    weyl_count,
)
from pleijel.utils import SolverParams

__all__ = [
    "BoundaryCondition",
    "PleijelEstimate",
    "ThetaSolution",
    "disk_objective",
    "elbert_laforgia",
    "gamma_bound",
    "gamma_ratio",
    "gautschi_step",
    "pleijel_disk",
    "pleijel_sector",
    "rect_pleijel",
    "rho",
    "rho_ratio",
    "sector_angular_density",
    "solve_theta",
    "CrossZero",
    "Degeneracy",
    "annulus_mode_value",
    "annulus_pleijel_surrogate",
    "corollary_bound_audit",
    "cross_product",
    "cross_zero",
    "cross_zeros",
    "degeneracy_scan",
    "degenerate_combination_grid",
    "fitted_c",
    "mcmahon_cross_guess",
    "AnnularSector",
    "Annulus",
    "Disk",
    "Orthotope",
    "Sector",
    "CapExceededError",
    "ConvergenceError",
    "OverflowRegimeError",
    "BesselPair",
    "bessel_zero",
    "bessel_zero_prime",
    "bessel_zeros",
    "bessel_zeros_prime",
    "eval_bessel",
    "mccann_bound",
    "mcmahon_zero_guess",
    "olver_first_zero_guess",
    "zero_guess",
    "regime_diagnostics",
    "EigenRecord",
    "NearDegeneracyReport",
    "RatioTrace",
    "counting_function",
    "enumerate_spectrum",
    "near_degeneracies",
    "nodal_count",
    "ratio_trace",
    "split_records",
    "weyl_count",
    "SolverParams",
]
