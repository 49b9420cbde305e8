"""Exact curvature of almost pseudo-Kähler structures on nilpotent Lie algebras."""

from .catalog import ENTRIES, get_entry, instantiate, list_entries, sample_params
from .curvature import curvature_report, levi_civita, nabla_subspace_checks, riemann, ricci
from .errors import NilgeoError
from .verify import check_sample, run_all, run_suite

__version__ = "0.1.0"

__all__ = [
    "ENTRIES",
    "NilgeoError",
    "check_sample",
    "curvature_report",
    "get_entry",
    "instantiate",
    "levi_civita",
    "list_entries",
    "nabla_subspace_checks",
    "ricci",
    "riemann",
    "run_all",
    "run_suite",
    "sample_params",
]
