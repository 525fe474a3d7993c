"""Exact computation of the monochromatic coverage constant g*(r) for
r-edge-colorings of complete bipartite graphs, with constructions,
discretization into concrete colorings, and brute-force/analytic oracles."""
from .bounds import (
    BoundQuery,
    corollary1_max,
    lemma3_bound,
    lemma4_interval,
    lemma6_bound,
    lemma7_bound,
    numeric_max,
)
from .constructions import (
    BoundTable,
    auto,
    bound_table,
    small_catalog,
    square_grid,
    square_minus_one,
    universal,
    universal_high,
    universal_low,
)
from .core import BudgetExceeded, ColorSet, DomainError, Rational, lcm_denominators, rat_arith, set_ops
from .grid import (
    ColoringSquare,
    TouchReport,
    brute_force_g,
    extend_square,
    profile_to_square,
    square_to_profile,
    touched_counts,
)
from .kernels import BACKEND
from .lp import LinearProgram, LPOutcome, build_coloring_lp, h_value, solve_min
from .profile import (
    Marginals,
    SolutionProfile,
    aggregate,
    area_check,
    delete_and_rescale,
    marginals,
    small_set_predicate,
    validate,
    weight_identity,
)
from .search import Certificate, canonicalize, certify, enumerate_gstar

__version__ = "0.1.0"
