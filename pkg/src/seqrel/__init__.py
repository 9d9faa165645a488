"""Exact and greedy policies for sequential relevance maximization with binary feedback."""
from .bounds import (BoundInputs, farsighted_bound, full_information_value, naive_bound,
                     universal_bound)
from .greedy import (FarsightedSolver, Policy, evaluate_policy, farsighted_value, get_policy,
                     naive_greedy_action, next_action)
from .model import (Instance, InformationState, condition, initial_state, load_instance,
                    make_instance, posterior, relevance_probability, validate)
from .optimal import (ClassSolver, RecursiveSolver, ValueReport, optimal_policy_action,
                      optimal_value, optimal_value_naive)
from .structure import dominates, nondominated_classes, relevant_set

__all__ = [
    "BoundInputs", "farsighted_bound", "full_information_value", "naive_bound", "universal_bound",
    "FarsightedSolver", "Policy", "evaluate_policy", "farsighted_value", "get_policy",
    "naive_greedy_action", "next_action",
    "Instance", "InformationState", "condition", "initial_state", "load_instance",
    "make_instance", "posterior", "relevance_probability", "validate",
    "ClassSolver", "RecursiveSolver", "ValueReport", "optimal_policy_action", "optimal_value",
    "optimal_value_naive",
    "dominates", "nondominated_classes", "relevant_set",
]
