import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flowinfo.dist import (
    ArgumentError,
    DistributionError,
    JointDistribution,
    Marginal,
    TripleJoint,
    diagonal_coupling,
    from_weights,
    make_rng,
    pairwise_joint,
    product_of_marginals,
    sample_joint,
    sample_triple,
)

from oracle import marginal_pair


def test_from_weights_examples():
    np.testing.assert_array_equal(from_weights([[10, 0], [0, 10]]).probs, np.diag([0.5, 0.5]))
    np.testing.assert_array_equal(from_weights([[1, 1], [1, 1]]).probs, np.full((2, 2), 0.25))


@pytest.mark.parametrize("w", [[[-1, 2], [3, 4]], [[0, 0], [0, 0]], [[1, np.nan]], [1, 2]])
def test_from_weights_errors(w):
    with pytest.raises(DistributionError):
        from_weights(w)


def test_from_weights_keeps_labels():
    J = from_weights([[1, 2, 3]], ["y"], ["a", "b", "c"])
    assert J.row_labels == ("y",) and J.col_labels == ("a", "b", "c")


def test_joint_rejects_invalid():
    with pytest.raises(DistributionError):
        JointDistribution([[0.5, 0.6]])
    with pytest.raises(DistributionError):
        JointDistribution([[1.5, -0.5]])
    with pytest.raises(DistributionError):
        JointDistribution([0.5, 0.5])
    with pytest.raises(DistributionError):
        JointDistribution([[0.5, 0.5]], row_labels=["a", "b"])
    with pytest.raises(DistributionError):
        Marginal([0.2, 0.2])


def test_joint_is_immutable():
    J = from_weights([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        J.probs[0, 0] = 1.0
    with pytest.raises(ValueError):
        J.row_probs[0] = 1.0


def test_marginals():
    J = JointDistribution([[0.1, 0.2], [0.3, 0.4]])
    np.testing.assert_allclose(J.row_probs, [0.3, 0.7])
    np.testing.assert_allclose(J.col_probs, [0.4, 0.6])
    assert isinstance(J.row_marginal(), Marginal)
    assert J.transpose().shape == (2, 2)
    np.testing.assert_array_equal(J.T.probs, J.probs.T)


def test_product_of_marginals_examples(rng):
    diag = from_weights([[1, 0], [0, 1]])
    np.testing.assert_array_equal(product_of_marginals(diag).probs, np.full((2, 2), 0.25))
    indep = JointDistribution(np.outer([0.25, 0.75], [0.5, 0.5]))
    np.testing.assert_array_equal(product_of_marginals(indep).probs, indep.probs)
    J = sample_joint(3, 3, rng)
    Q = product_of_marginals(J)
    np.testing.assert_allclose(Q.row_probs, J.row_probs, atol=1e-15)
    np.testing.assert_allclose(Q.col_probs, J.col_probs, atol=1e-15)


def test_sample_joint_point_simplex():
    J = sample_joint(1, 1, 3)
    assert J.probs.tolist() == [[1.0]]


def test_sample_joint_deterministic():
    np.testing.assert_array_equal(sample_joint(2, 2, 99).probs, sample_joint(2, 2, 99).probs)
    assert not np.array_equal(sample_joint(2, 2, 99).probs, sample_joint(2, 2, 100).probs)


def test_sample_joint_rejects_empty():
    with pytest.raises(ArgumentError):
        sample_joint(0, 3, 1)


def test_sample_joint_uniform_mean():
    # Dirichlet(1,...,1) over 9 cells: mean 1/9, variance (1/9)(8/9)/10
    rng = make_rng(5)
    n = 10_000
    draws = np.stack([sample_joint(3, 3, rng).probs for _ in range(n)])
    se = math.sqrt((1 / 9) * (8 / 9) / 10 / n)
    assert np.all(np.abs(draws.mean(axis=0) - 1 / 9) < 3 * se)


def test_sample_joint_valid_for_many_seeds():
    for seed in range(10_000):
        J = sample_joint(2, 3, seed)
        assert abs(J.probs.sum() - 1) <= 1e-9 and (J.probs >= 0).all()


def test_triple_joint_validation():
    with pytest.raises(DistributionError):
        TripleJoint(np.full((2, 2), 0.25))
    with pytest.raises(DistributionError):
        TripleJoint(np.full((2, 2, 2), 0.125), labels=[["a"], ["b", "c"], ["d", "e"]])


def test_pairwise_joint_independent_triple():
    a, b, c = np.array([0.2, 0.8]), np.array([0.5, 0.25, 0.25]), np.array([0.1, 0.9])
    T = TripleJoint(np.einsum("i,j,k->ijk", a, b, c))
    np.testing.assert_allclose(pairwise_joint(T, 0, 2).probs, np.outer(a, c), atol=1e-15)
    np.testing.assert_allclose(pairwise_joint(T, 2, 1).probs, np.outer(c, b), atol=1e-15)


def test_pairwise_joint_matches_direct_summation(rng):
    T = sample_triple((2, 2, 2), rng)
    nested = T.probs.tolist()
    for a in range(3):
        for b in range(3):
            if a == b:
                continue
            J = pairwise_joint(T, a, b)
            assert J.probs.sum() == pytest.approx(1, abs=1e-12)
            np.testing.assert_allclose(J.probs, marginal_pair(nested, a, b), atol=1e-15)


def test_pairwise_joint_equal_axes():
    with pytest.raises(ArgumentError):
        pairwise_joint(sample_triple((2, 2, 2), 1), 1, 1)


def test_diagonal_coupling():
    m = Marginal([0.2, 0.3, 0.5])
    J = diagonal_coupling(m)
    np.testing.assert_array_equal(J.row_probs, m.probs)
    np.testing.assert_array_equal(J.col_probs, m.probs)


@settings(max_examples=50)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_marginalization_commutes_with_product(rows, cols, seed):
    J = sample_joint(rows, cols, seed)
    Q = product_of_marginals(J)
    np.testing.assert_allclose(Q.row_probs, J.row_probs, atol=1e-15)
    np.testing.assert_allclose(Q.col_probs, J.col_probs, atol=1e-15)
