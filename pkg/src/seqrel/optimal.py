"""Exact optimal values and actions.

Two independent routes compute the same optimum:

* :class:`RecursiveSolver` tries every remaining category at every state
  (exponential in H; kept as the reference oracle).
* :class:`ClassSolver` works one level at a time. At a level it enumerates the
  non-dominated equivalence classes, then chooses the presentation order of the
  classes along the all-negative path by dynamic programming over the set of
  classes already presented, recursing into a fresh level whenever a class
  answers positively. A level with K classes costs up to 2**K subset states
  and K * 2**(K-1) sub-solves in the worst case.

Both memoize on the information state, so values for one (instance, beta) are
computed once per solver object.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import (Instance, InformationState, bits, geometric_run, initial_state)
from .structure import known_relevant, nondominated_classes

TIE_TOL = 1e-12


@dataclass(frozen=True)
class ValueReport:
    value: float
    best_action: int | None          # category index, None when nothing is worth showing
    level_ordering: tuple[tuple[int, ...], ...] = ()


@dataclass
class SolveStats:
    states_expanded: int = 0
    memo_hits: int = 0
    # per level: (number of classes K, subset states expanded, sub-solves issued)
    levels: list[tuple[int, int, int]] = field(default_factory=list)


def _argmax(values, tol=TIE_TOL):
    """Index of the first value within ``tol`` of the maximum."""
    best = max(values)
    for i, v in enumerate(values):
        if v >= best - tol:
            return i
    raise ValueError("empty sequence")


class RecursiveSolver:
    """Category-by-category recursion over every remaining category."""

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
        inst = self.instance
        beta = inst.beta
        S = state.types
        total = inst.mass(S) if S else 0.0
        best, best_j = 0.0, None
        if total > 0:
            candidates = []
            for j in bits(state.categories):
                m = inst.relevant_masks[j] & S
                if not m:
                    continue
                p = 1.0 if m == S else inst.mass(m) / total
                rest = state.categories & ~(1 << j)
                v = p * (geometric_run(inst.lengths[j], beta)
                         + beta ** inst.lengths[j] * self.solve(InformationState(m, rest)).value)
                if m != S:
                    v += (1 - p) * beta * self.solve(InformationState(S & ~m, rest)).value
                candidates.append((v, j))
            if candidates:
                k = _argmax([v for v, _ in candidates])
                best, best_j = candidates[k]
        report = ValueReport(best, best_j)
        self.memo[state] = report
        return report


class ClassSolver:
    """Level-wise solver: subset DP over class orderings, recursion on positives."""

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
        S = state.types
        if not S or inst.mass(S) <= 0:
            return ValueReport(0.0, None)
        part = nondominated_classes(inst, state)
        K = len(part.classes)
        if K == 0:
            return ValueReport(0.0, None)
        beta = inst.beta
        total = inst.mass(S)
        cls = part.classes
        full = (1 << K) - 1
        cat_masks = [sum(1 << j for j in c.categories) for c in cls]

        # negative-path survivors and removed columns for every subset of classes
        survivors = [S] * (1 << K)
        removed = [0] * (1 << K)
        for pi in range(1, 1 << K):
            low = (pi & -pi).bit_length() - 1
            prev = pi & (pi - 1)
            survivors[pi] = survivors[prev] & ~cls[low].types
            removed[pi] = removed[prev] | cat_masks[low]

        # G[pi]: best discounted value-to-go once the classes in pi answered negatively
        G = [0.0] * (1 << K)
        choice = [-1] * (1 << K)
        expanded = 0
        subsolves = 0
        for pi in sorted(range(full), key=lambda x: -x.bit_count()):
            expanded += 1
            alive = survivors[pi]
            if not alive:
                continue
            scores = []
            for k in range(K):
                if pi >> k & 1:
                    scores.append(float("-inf"))
                    continue
                hit_types = alive & cls[k].types
                if hit_types:
                    p = 1.0 if hit_types == S else inst.mass(hit_types) / total
                    sub = InformationState(hit_types, state.categories & ~(removed[pi] | cat_masks[k]))
                    subsolves += 1
                    inner = self.solve(sub).value
                    v = p * (geometric_run(cls[k].products, beta) + beta ** cls[k].products * inner)
                else:
                    v = 0.0
                scores.append(v + beta * G[pi | 1 << k])
            k = _argmax(scores)
            G[pi], choice[pi] = scores[k], k
        self.stats.levels.append((K, expanded + 1, subsolves))

        ordering = []
        pi = 0
        while pi != full:
            k = choice[pi]
            if k < 0:   # no surviving type: the rest of the order is immaterial
                ordering.extend(i for i in range(K) if not pi >> i & 1)
                break
            ordering.append(k)
            pi |= 1 << k
        level = tuple(cls[k].categories for k in ordering)
        return ValueReport(G[0], level[0][0], level)


def optimal_value_naive(instance: Instance, state: InformationState | None = None,
                        solver: RecursiveSolver | None = None) -> ValueReport:
    solver = solver or RecursiveSolver(instance)
    return solver.solve(state)


def optimal_value(instance: Instance, state: InformationState | None = None,
                  solver: ClassSolver | None = None) -> ValueReport:
    solver = solver or ClassSolver(instance)
    return solver.solve(state)


def optimal_policy_action(instance: Instance, state: InformationState | None = None,
                          solver: ClassSolver | None = None) -> int | None:
    """Category to present next under the optimal policy, or None."""
    if state is None:
        state = initial_state(instance)
    sure = known_relevant(instance, state)
    if sure:
        return sure[0]
    return optimal_value(instance, state, solver).best_action
