import math

import numpy as np
import pytest

from seqrel import instances
from seqrel.greedy import evaluate_policy, get_policy
from seqrel.sim import RngStream, monte_carlo, run_session, sample_horizon


def test_horizon_beta_zero():
    assert all(sample_horizon(0.0, RngStream(1, r)) == 1 for r in range(20))


def test_horizon_distribution():
    beta = 0.6
    draws = np.array([sample_horizon(beta, RngStream(5, r)) for r in range(20000)])
    assert draws.min() >= 1
    # mean of a geometric on {1, 2, ...} is 1 / (1 - beta)
    assert abs(draws.mean() - 1 / (1 - beta)) < 4 * math.sqrt(beta) / (1 - beta) / math.sqrt(len(draws))
    assert abs((draws == 1).mean() - (1 - beta)) < 0.02


def test_horizon_cap():
    assert max(sample_horizon(0.99, RngStream(2, r), cap=3) for r in range(200)) == 3


def test_session_trace_consistent(fig1):
    tr = run_session(fig1, get_policy("optimal"), RngStream(9, 0))
    assert len(tr.shown) <= tr.horizon
    assert tr.payoff == sum(s.feedback for s in tr.shown)
    assert all(s.feedback == fig1.relevance[tr.sampled_type, s.category] for s in tr.shown)
    text = tr.dump(fig1)
    assert text.splitlines()[0].startswith("type=")
    assert text.splitlines()[-1] == f"payoff={tr.payoff}"


def test_session_never_repeats_products():
    inst = instances.identity(3, products=[2, 3, 1], beta=0.95)
    for r in range(50):
        tr = run_session(inst, get_policy("naive"), RngStream(4, r))
        prods = [s.product for s in tr.shown]
        assert len(prods) == len(set(prods))


def test_monte_carlo_near_exact(fig1):
    pol = get_policy("farsighted")
    res = monte_carlo(fig1, pol, 20000, seed=3)
    assert abs(res.mean - evaluate_policy(fig1, pol)) <= 4 * res.stderr


def test_worker_count_does_not_change_output(fig1):
    pol = get_policy("naive")
    out = {w: monte_carlo(fig1, pol, 3000, seed=17, workers=w) for w in (1, 2, 8)}
    assert out[1] == out[2] == out[8]


def test_single_run_has_zero_stderr(identity2):
    assert monte_carlo(identity2, get_policy("optimal"), 1, seed=0).stderr == 0.0


def test_runs_must_be_positive(identity2):
    with pytest.raises(ValueError):
        monte_carlo(identity2, get_policy("optimal"), 0, seed=0)
