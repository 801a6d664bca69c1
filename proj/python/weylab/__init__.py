"""Local mean values of Weyl sums: exact Vinogradov counts, box quadrature,
exponent curves and prime-field scans, backed by the C++ core."""

from ._weylab import (
    alpha_0,
    big_D,
    bound_curve,
    count_J,
    count_J_box,
    count_J_inhom,
    detect_rational_structure,
    empirical_kappa,
    eta,
    figure_polylines,
    gauss_sum,
    hj_count,
    incomplete_ratio_scan,
    integrate_box,
    is_prime,
    known_sources,
    level_set_measure,
    lower_bound_witness,
    majorarc_witness,
    monomial_curve_density,
    mu,
    nu,
    prime_field_scan,
    rational_complete_sum,
    rho,
    s_of_d,
    schrodinger_scan,
    sigma_d,
    theta,
    verify_partition,
    weyl_sum,
    weyl_sum_weighted,
)

__all__ = [
    "alpha_0",
    "big_D",
    "bound_curve",
    "count_J",
    "count_J_box",
    "count_J_inhom",
    "detect_rational_structure",
    "empirical_kappa",
    "eta",
    "figure_polylines",
    "gauss_sum",
    "hj_count",
    "incomplete_ratio_scan",
    "integrate_box",
    "is_prime",
    "known_sources",
    "level_set_measure",
    "lower_bound_witness",
    "majorarc_witness",
    "monomial_curve_density",
    "mu",
    "nu",
    "prime_field_scan",
    "rational_complete_sum",
    "rho",
    "s_of_d",
    "schrodinger_scan",
    "sigma_d",
    "theta",
    "verify_partition",
    "weyl_sum",
    "weyl_sum_weighted",
]

__version__ = "0.1.0"
