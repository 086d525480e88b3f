import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartan235.lp import nonneg_combination


def test_feasible_simple():
    S = np.array([[1.0, 0.0, 0.0],
                  [0.0, 1.0, 0.0],
                  [0.0, 0.0, 1.0]]).T  # columns are samples
    res = nonneg_combination(S, np.array([1.0, 2.0, 3.0]))
    assert res.feasible
    assert res.coefficients is not None
    assert np.all(res.coefficients >= 0)
    assert np.allclose(S @ res.coefficients, [1, 2, 3], atol=1e-12)


def test_infeasible_gives_separating_dual():
    # all samples in the upper half-space, target below
    S = np.array([[1.0, 0.0, 0.5], [0.0, 1.0, 0.5], [0.2, 0.1, 1.0]])
    t = np.array([0.0, 0.0, -1.0])
    res = nonneg_combination(S, t)
    assert not res.feasible
    y = res.dual
    assert y is not None
    n = -y
    assert n @ t < 0
    assert np.all(S.T @ n >= -1e-9)


def test_zero_target_feasible():
    S = np.array([[1.0, 2.0], [0.0, 1.0], [0.0, 3.0]])
    res = nonneg_combination(S, np.zeros(3))
    assert res.feasible
    assert np.allclose(S @ res.coefficients, 0.0, atol=1e-12)


def test_degenerate_duplicate_columns_terminate():
    col = np.array([1.0, 1.0, 0.0])
    S = np.column_stack([col] * 6)
    res = nonneg_combination(S, 2 * col)
    assert res.feasible
    assert np.allclose(S @ res.coefficients, 2 * col, atol=1e-12)


def test_zero_columns_are_harmless():
    S = np.column_stack([np.zeros(3), np.array([1.0, 0, 0]),
                         np.zeros(3), np.array([0, 1.0, 1.0])])
    res = nonneg_combination(S, np.array([2.0, 3.0, 3.0]))
    assert res.feasible
    assert np.allclose(S @ res.coefficients, [2, 3, 3], atol=1e-10)


def test_deterministic_across_runs():
    rng = np.random.default_rng(41)
    S = rng.uniform(-1, 1, size=(3, 12))
    t = rng.uniform(-1, 1, size=3)
    first = nonneg_combination(S, t)
    for _ in range(5):
        again = nonneg_combination(S, t)
        assert again.feasible == first.feasible
        if first.feasible:
            assert np.array_equal(again.coefficients, first.coefficients)
        else:
            assert np.array_equal(again.dual, first.dual)


@settings(max_examples=300)
@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 10))
def test_constructed_feasible_systems_recovered(seed, n):
    rng = np.random.default_rng(seed)
    S = rng.uniform(-2, 2, size=(3, n))
    lam = rng.uniform(0, 2, size=n)
    t = S @ lam
    res = nonneg_combination(S, t)
    assert res.feasible
    assert np.all(res.coefficients >= 0)
    assert np.linalg.norm(S @ res.coefficients - t) <= 1e-8 * (1 + np.linalg.norm(t))


@settings(max_examples=300)
@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 10))
def test_constructed_infeasible_systems_rejected(seed, n):
    rng = np.random.default_rng(seed)
    normal = rng.normal(size=3)
    normal /= np.linalg.norm(normal)
    S = rng.uniform(-2, 2, size=(3, n))
    # push every sample to the nonnegative side of the hyperplane
    proj = normal @ S
    S = S + np.outer(normal, np.maximum(0.0, 1e-3 - proj))
    t = -normal  # strictly on the negative side
    res = nonneg_combination(S, t)
    assert not res.feasible
    y = res.dual
    assert y is not None
    assert (-y) @ t < 1e-12


def test_shape_validation():
    with pytest.raises(ValueError):
        nonneg_combination(np.zeros((2, 4)), np.zeros(2))
    with pytest.raises(ValueError):
        nonneg_combination(np.zeros((3, 4)), np.zeros(2))
