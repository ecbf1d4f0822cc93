"""Bohr-series toolkit: cyclic vectors in the Hardy space over the
infinite-dimensional polydisk, driven from Python.

Everything lives in the compiled core; this package re-exports it.
"""

from ._core import (  # noqa: F401
    BohrSeries,
    DomainError,
    PrimeTable,
    SolverError,
    TaylorPoly,
    ValidationError,
    bohr_lift,
    classify,
    decide,
    delta_hat,
    delta_sweep,
    dirichlet_multiply,
    divisors,
    evaluate,
    factorize,
    finite_support_evidence,
    growth_class,
    harmonic_kernel,
    harmonic_kernel_inverse,
    index_of,
    indicator_sine_coeffs,
    ingest_odd_periodic,
    invert,
    is_outer_polynomial,
    kernel,
    kernel_bounded_finite,
    kernel_bounded_rule,
    kernel_inverse,
    kernel_norm,
    kozlov_f,
    kozlov_g,
    kozlov_pair,
    kozlov_verdict,
    linear_combine,
    log_series,
    max_coeff_distance,
    mobius,
    multi_index,
    noncyclicity_bound,
    noor_experiment,
    noor_series,
    noor_w,
    norm,
    partition_factorize,
    polynomial_roots,
    power_dilation,
    prime_factor_series,
    read_series,
    restrict_to_first_variables,
    shift,
    szego_defect,
    variable_support,
    write_series,
    zero_search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
