"""Greedy heuristics, a uniform policy interface and exact policy evaluation."""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Callable

from .model import (Instance, InformationState, bits, conditional_mass, geometric_run,
                    initial_state)
from .optimal import (ClassSolver, RecursiveSolver, SolveStats, ValueReport, _argmax)
from .structure import known_relevant, nondominated_classes


class FarsightedSolver:
    """Farsighted greedy value, computed level by level.

    At each level the classes are tested greedily along the all-negative
    path: the next class is the one with the largest value assuming the same
    greedy rule is followed after a positive answer. The partition is
    recomputed after every negative answer, so classes that fuse are handled
    as a single class.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        self.memo: dict[InformationState, ValueReport] = {}
        self.stats = SolveStats()

    def solve(self, state: InformationState | None = None) -> ValueReport:
        if state is None:
            state = initial_state(self.instance)
        hit = self.memo.get(state)
        if hit is not None:
            self.stats.memo_hits += 1
            return hit
        self.stats.states_expanded += 1
        report = self._solve_level(state)
        self.memo[state] = report
        return report

    def _solve_level(self, state: InformationState) -> ValueReport:
        inst = self.instance
        beta = inst.beta
        root = state.types
        if not root or inst.mass(root) <= 0:
            return ValueReport(0.0, None)
        total = inst.mass(root)
        types, cats = state.types, state.categories
        value, discount = 0.0, 1.0
        ordering = []
        k_first = None
        subsolves = 0
        while types:
            part = nondominated_classes(inst, InformationState(types, cats))
            if k_first is None:
                k_first = len(part.classes)
            if not part.classes:
                break
            scores = []
            for c in part.classes:
                col = sum(1 << j for j in c.categories)
                p = 1.0 if c.types == root else inst.mass(c.types) / total
                subsolves += 1
                inner = self.solve(InformationState(c.types, cats & ~col)).value
                scores.append(p * (geometric_run(c.products, beta) + beta ** c.products * inner))
            k = _argmax(scores)
            chosen = part.classes[k]
            value += discount * scores[k]
            discount *= beta
            ordering.append(chosen.categories)
            types &= ~chosen.types
            cats &= ~sum(1 << j for j in chosen.categories)
        self.stats.levels.append((k_first or 0, len(ordering), subsolves))
        if not ordering:
            return ValueReport(0.0, None)
        return ValueReport(value, ordering[0][0], tuple(ordering))


def farsighted_value(instance: Instance, state: InformationState | None = None,
                     solver: FarsightedSolver | None = None) -> ValueReport:
    solver = solver or FarsightedSolver(instance)
    return solver.solve(state)


def naive_scores(instance: Instance, state: InformationState) -> list[float]:
    part = nondominated_classes(instance, state)
    return [geometric_run(c.products, instance.beta) * conditional_mass(instance, state, c.types)
            for c in part.classes]


def naive_greedy_action(instance: Instance, state: InformationState) -> int | None:
    """Index of the class maximizing expected discounted run length, or None."""
    scores = naive_scores(instance, state)
    if not scores:
        return None
    return _argmax(scores)


# -- policies ---------------------------------------------------------------

Rule = Callable[[Instance, InformationState], "int | None"]


@dataclass(frozen=True)
class Policy:
    """A stationary rule mapping an information state to a category.

    ``decide`` applies the known-relevant short-circuit before consulting the
    rule, and never returns a category that cannot be relevant.
    """
    kind: str
    rule: Rule = field(repr=False, compare=False)

    def decide(self, instance: Instance, state: InformationState) -> int | None:
        sure = known_relevant(instance, state)
        if sure:
            return sure[0]
        if not state.types:
            return None
        j = self.rule(instance, state)
        if j is not None and not (instance.relevant_masks[j] & state.types):
            raise ValueError(f"policy {self.kind!r} chose category {j} with zero relevance probability")
        return j


def _solver_cache(factory):
    cache: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()

    def get(instance):
        s = cache.get(instance)
        if s is None:
            s = cache[instance] = factory(instance)
        return s
    return get


def optimal_policy() -> Policy:
    solver = _solver_cache(ClassSolver)
    return Policy("optimal", lambda inst, st: solver(inst).solve(st).best_action)


def optimal_naive_policy() -> Policy:
    solver = _solver_cache(RecursiveSolver)
    return Policy("optimal-naive", lambda inst, st: solver(inst).solve(st).best_action)


def farsighted_policy() -> Policy:
    solver = _solver_cache(FarsightedSolver)
    return Policy("farsighted", lambda inst, st: solver(inst).solve(st).best_action)


def _naive_rule(inst, st):
    k = naive_greedy_action(inst, st)
    if k is None:
        return None
    return nondominated_classes(inst, st).classes[k].categories[0]


def naive_greedy_policy() -> Policy:
    return Policy("naive", _naive_rule)


def _anti_rule(inst, st):
    # smallest one-step score over every category that can still be relevant
    worst, pick = None, None
    for j in bits(st.categories):
        m = inst.relevant_masks[j] & st.types
        if not m:
            continue
        s = geometric_run(inst.lengths[j], inst.beta) * conditional_mass(inst, st, m)
        if worst is None or s < worst - 1e-12:
            worst, pick = s, j
    return pick


def anti_greedy_policy() -> Policy:
    return Policy("anti-greedy", _anti_rule)


def custom_policy(rule: Rule, kind: str = "custom") -> Policy:
    return Policy(kind, rule)


POLICIES = {
    "optimal": optimal_policy,
    "optimal-naive": optimal_naive_policy,
    "farsighted": farsighted_policy,
    "naive": naive_greedy_policy,
    "anti-greedy": anti_greedy_policy,
}


def get_policy(name: str) -> Policy:
    try:
        return POLICIES[name]()
    except KeyError:
        raise ValueError(f"unknown policy {name!r}; choose from {sorted(POLICIES)}") from None


# -- evaluation -------------------------------------------------------------

def evaluate_policy(instance: Instance, policy: Policy,
                    state: InformationState | None = None) -> float:
    """Exact expected discounted number of relevant products under ``policy``."""
    if state is None:
        state = initial_state(instance)
    beta = instance.beta
    memo: dict[InformationState, float] = {}

    def value(st: InformationState) -> float:
        v = memo.get(st)
        if v is not None:
            return v
        j = policy.decide(instance, st) if st.types else None
        if j is None:
            v = 0.0
        else:
            S = st.types
            m = instance.relevant_masks[j] & S
            rest = st.categories & ~(1 << j)
            q = conditional_mass(instance, st, m)
            L = instance.lengths[j]
            v = q * (geometric_run(L, beta) + beta ** L * value(InformationState(m, rest)))
            if m != S:
                v += (1 - q) * beta * value(InformationState(S & ~m, rest))
        memo[st] = v
        return v

    return value(state)


def next_action(policy: Policy, instance: Instance, state: InformationState,
                shown: tuple[int, ...] | None = None) -> tuple[int, int] | None:
    """Next product as ``(category, product_number)``, or None.

    ``shown`` counts the products already presented per category. Unshown
    products of a category already answered positively come first.
    """
    if shown is None:
        shown = (0,) * instance.n_categories
    S = state.types
    if S:
        for j in range(instance.n_categories):
            if (0 < shown[j] < instance.lengths[j] and not (state.categories >> j) & 1
                    and instance.relevant_masks[j] & S == S):
                return j, shown[j]
    j = policy.decide(instance, state)
    if j is None:
        return None
    return j, shown[j]
