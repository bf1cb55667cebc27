"""Exact, randomized, and data-randomized binomial confidence intervals.

Interval constructions: Clopper-Pearson, the uniform-auxiliary randomized
interval, its two-variable generalization, discrete-auxiliary intervals,
pattern-ranked (data-randomized) intervals, and the coprime split-sample
interval.  The analysis half verifies them: exact non-coverage and expected
length along theta grids, domination audits, refinement checks, and long-run
simulations driven by seeded, pseudorandom, quasi-random, or periodic
auxiliary sources.
"""

from .coverage import (
    CoverageCurve,
    DominationReport,
    RefinementReport,
    coverage_curve,
    default_theta_grid,
    domination_report,
    expected_length,
    korn_levels,
    noncoverage_cp,
    noncoverage_discrete_exact,
    noncoverage_randomized_exact,
    noncoverage_split,
    refinement_check,
    stevens_is_refinement,
)
from .intervals import (
    Interval,
    cp_interval,
    discrete_aux_interval,
    stevens_endpoints_batch,
    stevens_generalized,
    stevens_interval,
)
from .korn import KornRank, korn_interval, korn_rank
from .numerics import (
    MAX_N,
    BracketError,
    binom_cdf,
    binom_pmf,
    binom_pmf_rational,
    choose,
    solve_decreasing,
)
from .simulate import SimulationReport, longrun_simulate
from .sources import (
    PeriodicPermSource,
    UniformSource,
    VanDerCorputSource,
    WeylSource,
    periodic_perm,
    van_der_corput,
    weyl,
)
from .splitsample import (
    SplitDesign,
    split_design,
    split_sample_cdf,
    split_sample_interval,
    t_numerator,
    thetahat_support,
)

__version__ = "0.1.0"
