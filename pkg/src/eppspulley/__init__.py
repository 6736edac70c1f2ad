"""Epps-Pulley test for univariate normality.

The package computes the test statistic from data, approximates the
spectrum of the limit-null covariance operator by stochastic
discretization, and evaluates local approximate Bahadur slopes and
efficiencies against the likelihood ratio benchmark for a set of
parametric alternatives to normality.
"""

from .alternatives import (
    TABLE_FAMILIES,
    AlternativeFamily,
    contamination,
    family_from_name,
    lehmann,
    ley_paindaveine_1,
    ley_paindaveine_2,
)
from .backend import backend_name
from .bahadur import (
    EfficiencyTable,
    ExpansionCoefficients,
    SlopeReport,
    efficiency_table,
    expansion_coefficients,
    local_index,
    lrt_local_index,
    slope_report,
    stochastic_limit,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureError,
    QuadratureResult,
    gaussian_pair_moment,
    integrate_1d,
    integrate_2d,
    smoothed_density_identity,
    smoothed_second_moment_identity,
)
from .spectral import (
    SpectrumResult,
    kernel,
    lambda1,
    null_pvalue,
    nystrom_spectrum,
    operator_trace,
)
from .statistic import (
    DegenerateSampleError,
    Sample,
    TuningParam,
    epps_pulley_statistic,
    scaled_residuals,
)

__version__ = "0.1.0"

__all__ = [
    "AlternativeFamily",
    "DegenerateSampleError",
    "EfficiencyTable",
    "ExpansionCoefficients",
    "QuadratureConfig",
    "QuadratureError",
    "QuadratureResult",
    "Sample",
    "SlopeReport",
    "SpectrumResult",
    "TABLE_FAMILIES",
    "TuningParam",
    "backend_name",
    "contamination",
    "efficiency_table",
    "epps_pulley_statistic",
    "expansion_coefficients",
    "family_from_name",
    "gaussian_pair_moment",
    "integrate_1d",
    "integrate_2d",
    "kernel",
    "lambda1",
    "lehmann",
    "ley_paindaveine_1",
    "ley_paindaveine_2",
    "local_index",
    "lrt_local_index",
    "null_pvalue",
    "nystrom_spectrum",
    "operator_trace",
    "scaled_residuals",
    "slope_report",
    "smoothed_density_identity",
    "smoothed_second_moment_identity",
    "stochastic_limit",
    "__version__",
]
