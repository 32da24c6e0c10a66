"""Random weighted integer partitions: exact counts, saddle-point asymptotics,
the Gumbel law of the largest part, sampling and numerical checks of the
underlying analytic identities."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, ConvergenceError, DomainError
from .weights import (
    BUILTIN,
    WeightModel,
    constant,
    divisor_weight_sum,
    from_spec,
    l_sequence,
    linear,
    load_model,
    partial_sum_check,
    power,
    table,
    weight_at,
)
from .series import Mode, SeriesTable, cdf_exact, count, expand, largest_part_cdf, pmf_largest_part
from .saddle import (
    SaddleSolution,
    char_ratio,
    eval_A,
    eval_B,
    eval_F,
    lemma1_log_f,
    meinardus_estimate,
    normalizer_a,
    solve_saddle,
)
from .limit_law import (
    GumbelDiagnostic,
    Normalization,
    closed_form_cdf,
    diagnostic,
    gumbel_center,
    quantile_m,
    saddle_cdf_approx,
)
from .sampler import PartitionSample, empirical_largest_part, sample_mu_v, sample_uniform
from .analytic import (
    DirichletSpec,
    check_m3,
    dirichlet_D,
    mellin_F_check,
    perron_truncation_check,
)
