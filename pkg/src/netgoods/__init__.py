"""Nash equilibria of best-shot public goods games on networks."""

from .benefit import BenefitFunction, concavity, make_benefit, sigma_vectors, solve_k_for_sigma
from .equilibria import (
    EquilibriumPiece,
    EquilibriumSet,
    SizeLimitError,
    check_equilibrium,
    enumerate_pieces,
    enumerate_specialized,
    is_equilibrium,
)
from .graph import Graph, GraphError, parse_edge_list, format_edge_list, read_graph
from .indsets import (
    enumerate_maximal_independent_sets,
    independence_number,
    independent_domination_number,
    max_weight_independent_set,
)
from .metrics import classify, cost, utility, welfare, weighted_effort
from .optimizer import analyze, max_welfare, min_cost, max_weighted_effort, welfare_bounds

__version__ = "0.1.0"

__all__ = [
    "BenefitFunction",
    "EquilibriumPiece",
    "EquilibriumSet",
    "Graph",
    "GraphError",
    "SizeLimitError",
    "analyze",
    "check_equilibrium",
    "classify",
    "concavity",
    "cost",
    "enumerate_maximal_independent_sets",
    "enumerate_pieces",
    "enumerate_specialized",
    "format_edge_list",
    "independence_number",
    "independent_domination_number",
    "is_equilibrium",
    "make_benefit",
    "max_weight_independent_set",
    "max_weighted_effort",
    "max_welfare",
    "min_cost",
    "parse_edge_list",
    "read_graph",
    "sigma_vectors",
    "solve_k_for_sigma",
    "utility",
    "weighted_effort",
    "welfare",
    "welfare_bounds",
]
