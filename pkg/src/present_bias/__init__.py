"""Present-biased agents in task graphs and the principal's arc deletion/addition problems."""

from .model import (
    INF,
    Arc,
    FPModel,
    GraphError,
    Model,
    TaskGraph,
    TraversalResult,
    dist_to_target,
    follows_t_path,
    perceived_cost,
    perceived_next_arc,
    simulate_agent,
    topological_order,
)
from .deletion import (
    DeletionInstance,
    DeletionSolution,
    FPDeletionInstance,
    relevant_subgraph,
    solve_deletion_branching,
    solve_deletion_exhaustive,
)
from .kernel import apply_rules, lift_solution, solve_deletion_via_kernel, to_false_promises, verify_kernel_size
from .addition import (
    AdditionInstance,
    Candidate,
    PathWithDetours,
    decompose,
    solve_addition_dp,
    solve_addition_exhaustive,
)
from .documents import export_dot, parse_instance, serialize

__version__ = "0.1.0"
