"""Quadratic knapsack solver built on parametric minimum cuts.

The library computes the concave envelope of Lagrangian-relaxation optima
with a single warm-started min-cut sweep, then repairs the nested
breakpoint solutions into feasible answers for arbitrary budgets.
"""

from .baselines import (OracleResult, brute_force, brute_force_s_excess,
                        rg_heuristic, weight_sort_greedy)
from .envelope import (Breakpoint, DEFAULT_GRID_SIZE, Envelope, build_envelope,
                       envelope_sets_json, envelope_to_csv, lambda_grid,
                       lambda_upper_bound, upper_bound_at)
from .errors import (ContractViolationError, DegenerateInstanceError,
                     InternalInvariantError, InvalidNodeSetError, MismatchError,
                     ParameterError, ParseError, QkbpError)
from .fileio import (load_instance, read_instance, read_manifest, read_soutif,
                     save_instance, write_instance, write_manifest)
from .flownet import (CutSolution, FlowNetwork, build_qkp1_network,
                      build_qkp2_network, cut_capacity, dump_dimacs, min_cut,
                      parametric_sweep, reset_sweep_count, sweep_count)
from .generators import (GeneratorSpec, gen_dispersion, gen_large, gen_standard,
                         gen_teamformation, generate)
from .instance import (Budget, QkpInstance, cost, crossing_utility, objective,
                       s_excess_weights, weighted_out_degrees)
from .solver import (SolveResult, greedy_left, greedy_right, solve,
                     solve_budgets)

__version__ = "0.1.0"

__all__ = [
    "Budget", "Breakpoint", "CutSolution", "DEFAULT_GRID_SIZE", "Envelope",
    "FlowNetwork", "GeneratorSpec", "OracleResult", "QkpInstance",
    "SolveResult",
    "ContractViolationError", "DegenerateInstanceError",
    "InternalInvariantError", "InvalidNodeSetError", "MismatchError",
    "ParameterError", "ParseError", "QkbpError",
    "brute_force", "brute_force_s_excess", "build_envelope",
    "build_qkp1_network", "build_qkp2_network", "cost", "crossing_utility",
    "cut_capacity", "dump_dimacs", "envelope_sets_json", "envelope_to_csv",
    "gen_dispersion", "gen_large", "gen_standard", "gen_teamformation",
    "generate", "greedy_left", "greedy_right", "lambda_grid",
    "lambda_upper_bound", "load_instance", "min_cut", "objective",
    "parametric_sweep", "read_instance", "read_manifest", "read_soutif",
    "reset_sweep_count", "rg_heuristic", "s_excess_weights", "save_instance",
    "solve", "solve_budgets", "sweep_count", "upper_bound_at",
    "weight_sort_greedy", "weighted_out_degrees", "write_instance",
    "write_manifest",
]
