"""Exact asymptotic series for time-delay statistics of absorbing chaotic cavities.

The package computes, in exact rational-function arithmetic, the three
asymptotic expansions (large channel number, weak absorption, strong
absorption) of Schur moments, trace moments and Wigner-time-delay cumulants
of the absorption time-delay operator of a chaotic cavity with broken
time-reversal symmetry.

Public API
----------
- :class:`Partition` and the combinatorial primitives in
  :mod:`delaymoments.partitions`
- :class:`Polynomial`, :class:`RationalFunction`, :class:`TruncatedSeries`
- :func:`reflection_schur_moment`, :func:`delay_schur_moment`
- :func:`power_sum_moment`, :func:`wigner_moment`, :func:`cumulant`,
  :func:`variance`, :func:`validate_conjectures`
- the `delaymoments` command line tool (see :mod:`delaymoments.cli`)
"""

from .algebra import (
    COEFF_SYMBOL,
    SYM_G,
    SYM_M,
    VAR_GAMMA,
    VAR_INV_GAMMA,
    VAR_INV_M,
    VARIABLES,
    ExactDivisionError,
    PoleError,
    Polynomial,
    RationalFunction,
    SeriesOrderError,
    TruncatedSeries,
    VariableMismatchError,
    laurent_expand_inverse_power,
    polynomial_gcd,
)
from .engine import (
    InternalConsistencyError,
    absorption_weight,
    binomial_determinant,
    delay_schur_moment,
    durfee_filtered_lr_sum,
    falling_factorial,
    geometric_determinant,
    reflection_schur_moment,
    rising_factorial,
)
from .partitions import (
    ContainmentError,
    Partition,
    WeightMismatchError,
    character,
    class_size,
    contains,
    content_product,
    dimension,
    durfee,
    enumerate_partitions,
    lr_coefficient,
    subpartitions,
)
from .stats import (
    ConjectureReport,
    RegimeRequest,
    StatisticRequest,
    compute_statistic,
    cumulant,
    power_sum_moment,
    validate_conjectures,
    variance,
    wigner_moment,
)

__version__ = "0.1.0"

__all__ = [
    "COEFF_SYMBOL", "SYM_G", "SYM_M",
    "VAR_GAMMA", "VAR_INV_GAMMA", "VAR_INV_M", "VARIABLES",
    "ContainmentError", "ExactDivisionError", "InternalConsistencyError",
    "PoleError", "SeriesOrderError", "VariableMismatchError",
    "WeightMismatchError",
    "Partition", "Polynomial", "RationalFunction", "TruncatedSeries",
    "RegimeRequest", "StatisticRequest", "ConjectureReport",
    "absorption_weight", "binomial_determinant", "character", "class_size",
    "compute_statistic", "contains", "content_product", "cumulant",
    "delay_schur_moment", "dimension", "durfee", "durfee_filtered_lr_sum",
    "enumerate_partitions", "falling_factorial", "geometric_determinant",
    "laurent_expand_inverse_power", "lr_coefficient", "polynomial_gcd",
    "power_sum_moment", "reflection_schur_moment", "rising_factorial",
    "subpartitions", "validate_conjectures", "variance", "wigner_moment",
    "__version__",
]
