import pytest
from hypothesis import given, settings, strategies as st

from seqrel.bounds import (BoundInputs, farsighted_bound, full_information_value, naive_bound,
                           universal_bound)
from seqrel.greedy import evaluate_policy, get_policy
from seqrel.optimal import ClassSolver

from test_model import small_instance


def test_bound_values():
    b = BoundInputs(0.5, 1, 4, 4)
    assert farsighted_bound(b) == pytest.approx(0.5 / (1.5 - 0.0625 - 0.5))
    assert naive_bound(b) == pytest.approx(0.5 / (1.5 - 0.0625))
    assert universal_bound(b) == pytest.approx(0.125)


def test_beta_zero_bounds_are_one():
    b = BoundInputs(0.0, 1, 3, 3)
    assert farsighted_bound(b) == naive_bound(b) == 1.0
    assert universal_bound(BoundInputs(0.0, 1, 1, 1)) == 1.0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        BoundInputs(1.0, 1, 2, 2)
    with pytest.raises(ValueError):
        BoundInputs(0.5, 2, 2, 3)


@given(st.floats(0.0, 0.99), st.integers(1, 5), st.integers(1, 8))
def test_bound_ordering(beta, lmin, h):
    b = BoundInputs(beta, lmin, h, h * lmin)
    assert 0.0 <= naive_bound(b) <= farsighted_bound(b) <= 1.0 + 1e-12


@given(st.floats(0.01, 0.99), st.integers(1, 8))
def test_farsighted_bound_unit_products(beta, h):
    # with one product per category the farsighted factor is (1-b)/(1-b^H)
    b = BoundInputs(beta, 1, h, h)
    assert farsighted_bound(b) == pytest.approx((1 - beta) / (1 - beta ** h), rel=1e-9)


def test_full_information(triangular4):
    fi = full_information_value(triangular4)
    assert fi.relevant_counts.tolist() == [4, 3, 2, 1]
    assert fi.expected_count == pytest.approx(2.5)
    assert fi.discounted == pytest.approx(1.53125)


@settings(max_examples=100, deadline=None)
@given(small_instance(), st.sampled_from([0.0, 0.3, 0.6, 0.9]))
def test_theorem_bounds_on_small_instances(inst, beta):
    inst = inst.with_beta(beta)
    opt = ClassSolver(inst).solve().value
    b = BoundInputs.of(inst)
    for name, bound in (("farsighted", farsighted_bound(b)), ("naive", naive_bound(b)),
                        ("anti-greedy", universal_bound(b))):
        assert evaluate_policy(inst, get_policy(name)) >= bound * opt - 1e-9
