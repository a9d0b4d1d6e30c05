"""
incflow - Build schedules for incremental maximum flow

Potential arcs are added to a flow network one per period, and every added
arc can carry flow from the following period on. incflow provides:
- Maximum flow, min-cost flow and residual labelings on mixed networks
- The fixed-charge subproblems behind increment-driven build orders
- Build-order heuristics and exact solvers for small instances
- Random, adversarial and reduction-based instance generators
- Exact checks of the approximation bounds
- LP model export and a benchmark harness
"""

__version__ = "1.0.0"
__author__ = "incflow developers"
__license__ = "MIT"
__description__ = "Build schedules for incremental maximum flow"

from .config import Settings, load_settings
from .core import BatchSolver, Method, SolveEngine
from .errors import IncflowError
from .exact import brute_force_permutations, exact_subset_dp
from .heur import (
    BuildSchedule, SolveReport, evaluate_schedule, quickest_increment, quickest_increment_poly,
    quickest_to_target, quickest_to_ultimate,
)
from .netcore import Arc, ArcKind, Instance, Network, flow_bounds, max_flow
from .subprob import c_values, max_val, min_arcs

__all__ = [
    'Settings',
    'load_settings',
    'BatchSolver',
    'Method',
    'SolveEngine',
    'IncflowError',
    'brute_force_permutations',
    'exact_subset_dp',
    'BuildSchedule',
    'SolveReport',
    'evaluate_schedule',
    'quickest_increment',
    'quickest_increment_poly',
    'quickest_to_target',
    'quickest_to_ultimate',
    'Arc',
    'ArcKind',
    'Instance',
    'Network',
    'flow_bounds',
    'max_flow',
    'c_values',
    'max_val',
    'min_arcs',
    '__version__',
    '__author__',
    '__license__',
]
