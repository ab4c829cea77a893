"""Engine and analysis toolkit for the misère vertex-search game on trees.

Players alternate guessing vertices of a tree with a hidden, uniformly
random "mine"; a guessed safe vertex is removed and play continues on the
component containing the mine; whoever guesses the mine loses.
"""

from .trees import (
    ComponentSplit,
    Tree,
    TreeSpecError,
    all_trees,
    canonical_key,
    make_path,
    make_spider,
    make_star,
    parse_tree_spec,
    split_at,
)
from .optimal import (
    MoveReport,
    SizeCapError,
    optimal_moves,
    optimal_value,
    path_optimal_splits,
    path_value_closed,
    star_value,
)
from .exploit import (
    ExploitReport,
    PathTables,
    b_bound_closed,
    best_first_guesses,
    dominance_check,
    exploit_values,
    F_values,
    limit_2a,
    monotonicity_check,
    path_tables,
    rank_order_check,
    star_PQ,
)
from .recurrence import (
    CaseResult,
    RationalPolynomial,
    auxiliary_residual,
    hyper_all,
    hyper_case,
    poly_solutions,
    quadratic_family_residual,
)
from .simulate import SimResult, StrategySpec, exhaustive_value, monte_carlo
from .spider import NimMove, SpiderState, coupling_check, legal_moves, nim_values, outcome_distribution
from .session import GameSession, SessionStore
from .service import create_app

__version__ = "0.1.0"
