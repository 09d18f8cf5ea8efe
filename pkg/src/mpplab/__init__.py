"""mpplab: multiparameter Poisson processes, their fractional time changes and integrals.

Every closed-form quantity comes with a Monte Carlo or enumeration
counterpart; see :mod:`mpplab.validation`.
"""

__version__ = "0.1.0"

from .index import (  # noqa: E402
    Composition,
    DimensionError,
    FracOrders,
    IndexPoint,
    RateVector,
    compositions,
    lambda_dot,
    partial_le,
    partial_lt,
)
from .mc import McConfig, McEstimate, chi_square_gof, ks_two_sample, run_replicas  # noqa: E402
from .mpp import MppModel, mpp_pmf, sample_mpp_path  # noqa: E402
from .special import MLParams, SeriesError, mittag_leffler, ml  # noqa: E402
from .time_changed import MfppModel, SfppModel, mfpp_pmf, sfpp_pmf  # noqa: E402

__all__ = [
    "Composition",
    "DimensionError",
    "FracOrders",
    "IndexPoint",
    "MLParams",
    "McConfig",
    "McEstimate",
    "MfppModel",
    "MppModel",
    "RateVector",
    "SeriesError",
    "SfppModel",
    "chi_square_gof",
    "compositions",
    "ks_two_sample",
    "lambda_dot",
    "mfpp_pmf",
    "mittag_leffler",
    "ml",
    "mpp_pmf",
    "partial_le",
    "partial_lt",
    "run_replicas",
    "sample_mpp_path",
    "sfpp_pmf",
]
