import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from seqrel import instances
from seqrel.greedy import (FarsightedSolver, anti_greedy_policy, custom_policy, evaluate_policy,
                           farsighted_policy, get_policy, naive_greedy_action, naive_greedy_policy,
                           naive_scores, next_action, optimal_naive_policy, optimal_policy)
from seqrel.model import InformationState, condition, initial_state, make_instance
from seqrel.optimal import ClassSolver

from oracles import farsighted_fixed_classes, policy_value_by_types, product_mdp_value
from test_model import small_instance


def test_diag3_naive_scores(diag3):
    assert naive_scores(diag3, initial_state(diag3)) == pytest.approx([0.75, 0.3, 0.35], abs=1e-12)
    assert naive_greedy_action(diag3, initial_state(diag3)) == 0


def test_naive_prefers_longer_runs():
    inst = instances.identity(2, prior=[0.4, 0.6], products=[3, 1], beta=0.5)
    # 1.75 * 0.4 = 0.7 beats 1.0 * 0.6
    assert naive_greedy_policy().decide(inst, initial_state(inst)) == 0


def test_identity2_policies_all_optimal(identity2):
    for name in ("optimal", "optimal-naive", "farsighted", "naive", "anti-greedy"):
        assert evaluate_policy(identity2, get_policy(name)) == pytest.approx(0.75, abs=1e-12)


def test_unknown_policy():
    with pytest.raises(ValueError):
        get_policy("random")


def test_fig1_farsighted(fig1):
    assert FarsightedSolver(fig1).solve().value == pytest.approx(farsighted_fixed_classes(fig1), abs=1e-12)


def test_anti_greedy_picks_smallest_score():
    inst = make_instance([[1, 0, 0], [1, 1, 0], [0, 0, 1]], [0.2, 0.3, 0.5])
    # scores over all categories: A 0.5, B 0.3, C 0.5
    assert anti_greedy_policy().decide(inst, initial_state(inst)) == 1


def test_policy_rejects_impossible_category(identity2):
    bad = custom_policy(lambda inst, st_: 1)
    st_ = condition(identity2, initial_state(identity2), 0, 1)
    # the short-circuit is skipped once category 0 is shown, so the rule is consulted
    st_ = InformationState(st_.types, 0b10)
    with pytest.raises(ValueError):
        bad.decide(identity2, st_)


def test_next_action_exhausts_known_relevant():
    inst = instances.identity(2, products=[3, 1])
    st_ = condition(inst, initial_state(inst), 0, 1)
    assert next_action(naive_greedy_policy(), inst, st_, (1, 0)) == (0, 1)
    assert next_action(naive_greedy_policy(), inst, st_, (3, 0)) is None


@settings(max_examples=150, deadline=None)
@given(small_instance(), st.sampled_from([0.1, 0.5, 0.9]))
def test_farsighted_matches_fixed_class_version(inst, beta):
    inst = inst.with_beta(beta)
    assert abs(FarsightedSolver(inst).solve().value - farsighted_fixed_classes(inst)) <= 1e-9


@settings(max_examples=150, deadline=None)
@given(small_instance(), st.sampled_from([0.1, 0.5, 0.9]))
def test_farsighted_value_is_its_policy_value(inst, beta):
    inst = inst.with_beta(beta)
    assert abs(FarsightedSolver(inst).solve().value
               - evaluate_policy(inst, farsighted_policy())) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(small_instance(), st.sampled_from(["optimal", "farsighted", "naive", "anti-greedy"]))
def test_evaluation_matches_per_type_replay(inst, name):
    pol = get_policy(name)
    assert abs(evaluate_policy(inst, pol) - policy_value_by_types(inst, pol)) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(small_instance(), st.sampled_from(["farsighted", "naive", "anti-greedy"]))
def test_no_policy_beats_optimal(inst, name):
    v = evaluate_policy(inst, get_policy(name))
    assert v <= ClassSolver(inst).solve().value + 1e-9


@settings(max_examples=80, deadline=None)
@given(small_instance())
def test_optimal_policy_attains_optimum(inst):
    opt = product_mdp_value(inst)
    assert abs(evaluate_policy(inst, optimal_policy()) - opt) <= 1e-9
    assert abs(evaluate_policy(inst, optimal_naive_policy()) - opt) <= 1e-9


def test_farsighted_level_counters():
    rng = np.random.default_rng(11)
    for _ in range(30):
        q = rng.integers(0, 2, size=(6, 6))
        q[q.sum(axis=1) == 0, 0] = 1
        s = FarsightedSolver(make_instance(q))
        s.solve()
        for K, steps, subsolves in s.stats.levels:
            assert steps <= K
            assert subsolves <= K * (K + 1) // 2
