"""Dependency-matrix norms, graph densities and mixing-time certificates
for Glauber dynamics.

Matrices are lists of rows (any nested sequence, including 2-D numpy
arrays, is accepted).  Certificates, densities and spectral results come
back as dicts with the same fields as the command-line JSON output.
"""

from ._core import (
    Graph,
    SpinmixError,
    best_certificate,
    coloring_certificates,
    coloring_dependency,
    coupled_run_coloring,
    decompose,
    decompose_matrix,
    delta_contraction_check,
    exact_tv_coloring,
    exact_tv_facilitated,
    facilitated_dependency,
    improved_scan_time,
    influence_matrix_exact,
    is_irreducible,
    kappa_matrix,
    matrix_norm,
    max_density,
    numerical_radius,
    parse_matrix,
    perron_left_vector,
    random_update_matrix,
    random_update_time,
    scan_time,
    scan_update_matrix,
    spectral_density_bound,
    spectral_radius,
)

__all__ = [
    "Graph",
    "SpinmixError",
    "best_certificate",
    "coloring_certificates",
    "coloring_dependency",
    "coupled_run_coloring",
    "decompose",
    "decompose_matrix",
    "delta_contraction_check",
    "exact_tv_coloring",
    "exact_tv_facilitated",
    "facilitated_dependency",
    "improved_scan_time",
    "influence_matrix_exact",
    "is_irreducible",
    "kappa_matrix",
    "matrix_norm",
    "max_density",
    "numerical_radius",
    "parse_matrix",
    "perron_left_vector",
    "random_update_matrix",
    "random_update_time",
    "scan_time",
    "scan_update_matrix",
    "spectral_density_bound",
    "spectral_radius",
]

__version__ = "0.1.0"
