"""Exact solvers and simulation for time-window constrained target set
selection on graphs: deterministic bounded-activity influence diffusion,
with provably optimal solvers for paths, rings, trees and complete
graphs, a brute-force oracle, a deterministic instance generator and a
CLI with a benchmark harness."""

from .complete_solver import max_influenced, solve_complete, threshold_counts
from .diffusion import (
    DiffusionTrace,
    is_target_set,
    simulate,
    simulate_bounded_memory,
)
from .errors import (
    CheckError,
    ParseError,
    ShapeMismatchError,
    UnsupportedInstanceError,
)
from .generator import SplitMix64, generate
from .instance import (
    Instance,
    Shape,
    classify_shape,
    make_instance,
    parse_instance,
    serialize_instance,
    validate,
)
from .oracle import brute_force_min_target_set
from .path_solver import (
    build_D,
    classical_path_solution,
    prune_path,
    second_element_candidates,
    solve_path,
)
from .result import SolveResult
from .ring_solver import solve_ring
from .toolkit import connected_components, solve
from .tree_solver import (
    AssignmentProblem,
    TreeTables,
    best_free_child_cost,
    solve_tree,
    tree_sigma_tables,
    window_assignment_min,
)

__version__ = "0.1.0"

__all__ = [
    "AssignmentProblem",
    "CheckError",
    "DiffusionTrace",
    "Instance",
    "ParseError",
    "Shape",
    "ShapeMismatchError",
    "SolveResult",
    "SplitMix64",
    "TreeTables",
    "UnsupportedInstanceError",
    "best_free_child_cost",
    "brute_force_min_target_set",
    "build_D",
    "classical_path_solution",
    "classify_shape",
    "connected_components",
    "generate",
    "is_target_set",
    "make_instance",
    "max_influenced",
    "parse_instance",
    "prune_path",
    "second_element_candidates",
    "serialize_instance",
    "simulate",
    "simulate_bounded_memory",
    "solve",
    "solve_complete",
    "solve_path",
    "solve_ring",
    "solve_tree",
    "threshold_counts",
    "tree_sigma_tables",
    "validate",
    "window_assignment_min",
]
