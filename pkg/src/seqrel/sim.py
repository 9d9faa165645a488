"""Seeded Monte Carlo simulation of recommendation sessions.

Run ``r`` of a Monte Carlo batch draws from its own stream, a PCG64 generator
seeded by ``SeedSequence(seed, spawn_key=(r,))``, so aggregate results do not
depend on how the runs are split across workers.
"""
from __future__ import annotations

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .greedy import Policy, next_action
from .model import Instance, condition, initial_state


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(self.stream,))))


@dataclass(frozen=True)
class ShownProduct:
    product: int      # global product index
    category: int
    feedback: int


@dataclass(frozen=True)
class SessionTrace:
    sampled_type: int
    horizon: int
    shown: tuple[ShownProduct, ...]
    payoff: int

    def dump(self, instance: Instance) -> str:
        lines = [f"type={self.sampled_type + 1} horizon={self.horizon}"]
        for t, s in enumerate(self.shown, 1):
            k = s.product - instance.product_offsets[s.category]
            lines.append(f"t={t} product={instance.product_label(s.category, k)} "
                         f"category={instance.category_names[s.category]} feedback={s.feedback}")
        lines.append(f"payoff={self.payoff}")
        return "\n".join(lines)


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    runs: int


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng


def sample_horizon(beta: float, rng, cap: int | None = None) -> int:
    """Geometric session length on {1, 2, ...} with P(C = m) = beta^(m-1) (1 - beta).

    With ``cap`` the draw is truncated to at most ``cap``.
    """
    rng = _as_generator(rng)
    u = 1.0 - rng.random()   # in (0, 1]
    if beta == 0.0:
        c = 1
    else:
        c = int(math.floor(math.log(u) / math.log(beta))) + 1
    if cap is not None:
        c = min(c, cap)
    return c


def _cached(policy: Policy, cache: dict | None) -> Policy:
    if cache is None:
        return policy
    rule = policy.rule

    def lookup(inst, st):
        key = (id(inst), st)
        if key not in cache:
            cache[key] = rule(inst, st)
        return cache[key]
    return Policy(policy.kind, lookup)


def run_session(instance: Instance, policy: Policy, rng, decision_cache: dict | None = None
                ) -> SessionTrace:
    """Sample a type and a session length, then follow ``policy`` forward."""
    rng = _as_generator(rng)
    cdf = instance.prior_cdf
    x = min(bisect.bisect_right(cdf, rng.random() * cdf[-1]), instance.n_types - 1)
    L = instance.total_products
    horizon = sample_horizon(instance.beta, rng, cap=L + 1)
    pol = _cached(policy, decision_cache)

    state = initial_state(instance)
    shown_counts = [0] * instance.n_categories
    shown = []
    payoff = 0
    offsets = instance.product_offsets
    for _ in range(min(horizon, L)):
        act = next_action(pol, instance, state, tuple(shown_counts))
        if act is None:
            break
        j, k = act
        y = int(instance.relevance[x, j])
        if k == 0:
            state = condition(instance, state, j, y)
        shown_counts[j] += 1
        shown.append(ShownProduct(offsets[j] + k, j, y))
        payoff += y
    return SessionTrace(x, horizon, tuple(shown), payoff)


def monte_carlo(instance: Instance, policy: Policy, runs: int, seed: int,
                workers: int = 1) -> MonteCarloResult:
    """Mean and standard error of the session payoff over ``runs`` sessions."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    payoffs = np.zeros(runs)
    cache: dict = {}

    def work(lo, hi):
        for r in range(lo, hi):
            payoffs[r] = run_session(instance, policy, RngStream(seed, r), cache).payoff

    workers = max(1, int(workers))
    edges = np.linspace(0, runs, workers + 1).astype(int)
    if workers == 1:
        work(0, runs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(work, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
            for f in futures:
                f.result()
    mean = float(np.mean(payoffs))
    stderr = float(np.std(payoffs, ddof=1) / math.sqrt(runs)) if runs > 1 else 0.0
    return MonteCarloResult(mean, stderr, runs)
