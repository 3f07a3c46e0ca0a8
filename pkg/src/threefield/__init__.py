"""Exact q-series for the threefield theta identity and its companion routes."""

from .fields import eta_quotient_checks, ideal_count_oracle, sturm_bound
from .identity import RouteId, rho_via, rhostar_via, sigma_identity_check, theta_full, verify
from .partitions import colored_partition_counts
from .qseries import QSeries, eta_quotient_series, qpochhammer_product

__all__ = [
    "QSeries",
    "RouteId",
    "colored_partition_counts",
    "eta_quotient_checks",
    "eta_quotient_series",
    "ideal_count_oracle",
    "qpochhammer_product",
    "rho_via",
    "rhostar_via",
    "sigma_identity_check",
    "sturm_bound",
    "theta_full",
    "verify",
]
__version__ = "0.1.0"
