import math

import numpy as np
import pytest

from flowinfo.flownet import (
    FlowNetwork,
    NetworkError,
    from_matrix,
    indices,
    network_asymmetry,
    prune_isolated,
    to_joint,
    vitality_coordinates,
)
from flowinfo.infometrics import Given, conditional_entropy
from flowinfo.logunits import BIT, BYTE, REGISTRY, checked_add

import oracle

FLOW = "mg C m^-2 y^-1"


def random_flows(rng, k, sparsity=0.25):
    T = rng.standard_exponential((k, k)) * 10 ** rng.uniform(-2, 2)
    T[rng.random((k, k)) < sparsity] = 0.0
    T[0, 0] += 1.0
    return T


def test_network_validation():
    with pytest.raises(NetworkError):
        FlowNetwork(None, np.ones((2, 3)))
    with pytest.raises(NetworkError):
        FlowNetwork(None, [[1, -1], [0, 0]])
    with pytest.raises(NetworkError):
        FlowNetwork(["a", "a"], np.ones((2, 2)))
    with pytest.raises(NetworkError):
        FlowNetwork(None, [[np.inf]])
    with pytest.raises(NetworkError):
        to_joint(FlowNetwork(None, np.zeros((2, 2))))


def test_to_joint_examples():
    np.testing.assert_array_equal(to_joint(from_matrix([[10, 0], [0, 10]])).probs, np.diag([0.5, 0.5]))
    np.testing.assert_array_equal(to_joint(from_matrix([[1, 1], [1, 1]])).probs, np.full((2, 2), 0.25))
    N = from_matrix([[3, 1], [2, 4]], ["a", "b"])
    J = to_joint(N)
    assert J.row_labels == J.col_labels == ("a", "b")
    np.testing.assert_allclose(to_joint(N.scaled(7.5)).probs, J.probs, rtol=1e-15)


def test_indices_diagonal():
    rep = indices(from_matrix([[10, 0], [0, 10]], unit=FLOW))
    assert rep.t_total.value == 20 and rep.t_total.unit_string == FLOW
    assert rep.measures.mi.value == 1 and rep.measures.vi.value == 0 and rep.measures.h_joint.value == 1
    assert (rep.ascendency.value, rep.reserve.value, rep.capacity.value) == (20, 0, 20)
    assert rep.ascendency.unit_string == "mg C bit m^-2 y^-1"


def test_indices_uniform():
    rep = indices(from_matrix(np.full((2, 2), 5.0)))
    assert rep.measures.mi.value == 0 and rep.measures.vi.value == 2
    assert (rep.ascendency.value, rep.reserve.value, rep.capacity.value) == (0, 40, 40)


def test_indices_decomposition_random(rng):
    for _ in range(200):
        N = from_matrix(random_flows(rng, 4), unit=FLOW)
        rep = indices(N)
        assert rep.ascendency.value + rep.reserve.value == pytest.approx(rep.capacity.value, rel=1e-9)
        # checked arithmetic agrees with the raw sum
        total = checked_add(rep.ascendency, rep.reserve)
        assert total.value == pytest.approx(rep.capacity.value, rel=1e-9)
        # independent route: nested-list sums over T / T..
        P = (N.flows / N.flows.sum()).tolist()
        assert rep.measures.mi.value == pytest.approx(max(oracle.mutual_information(P), 0), abs=1e-9)
        assert rep.measures.vi.value == pytest.approx(oracle.variation(P), abs=1e-9)
        assert rep.measures.h_joint.value == pytest.approx(oracle.joint_entropy(P), abs=1e-9)


def test_indices_units(rng):
    N = from_matrix(random_flows(rng, 5), unit=FLOW)
    in_bits, in_bytes = indices(N, BIT), indices(N, "byte")
    assert in_bytes.ascendency.unit == BYTE
    assert in_bytes.ascendency.value == pytest.approx(in_bits.ascendency.value / 8, rel=1e-12)
    assert in_bytes.ascendency.dimension == in_bits.ascendency.dimension


@pytest.mark.parametrize("k", range(2, 9))
def test_vitality_closed_forms(k):
    n, c = vitality_coordinates(from_matrix(np.eye(k) * 3.0))
    assert n == pytest.approx(k, rel=1e-9) and c == pytest.approx(1.0, rel=1e-9)
    n, c = vitality_coordinates(from_matrix(np.full((k, k), 2.0)))
    assert n == pytest.approx(1.0, rel=1e-9) and c == pytest.approx(k, rel=1e-9)


def test_vitality_consistency_and_bounds(rng):
    for _ in range(300):
        N = from_matrix(random_flows(rng, int(rng.integers(2, 13))))
        rep = indices(N)
        n, c = rep.vitality_n, rep.vitality_c
        assert n >= 1 and c >= 1
        assert n * c * c == pytest.approx(2 ** rep.measures.h_joint.value, rel=1e-9)


def test_vitality_unit_independent(rng):
    N = from_matrix(random_flows(rng, 6))
    base = indices(N, BIT)
    for unit in REGISTRY.values():
        rep = indices(N, unit)
        assert (rep.vitality_n, rep.vitality_c) == (base.vitality_n, base.vitality_c)


@pytest.mark.parametrize("lam", [0.001, 1.0, 1e6])
def test_intensivity(lam, rng):
    for _ in range(50):
        N = from_matrix(random_flows(rng, int(rng.integers(2, 10))), unit=FLOW)
        a, b = indices(N), indices(N.scaled(lam))
        for name in ("mi", "vi", "h_joint"):
            assert b.measures.bits(name) == pytest.approx(a.measures.bits(name), abs=1e-9)
        assert b.vitality_n == pytest.approx(a.vitality_n, rel=1e-9)
        assert b.vitality_c == pytest.approx(a.vitality_c, rel=1e-9)
        for name in ("ascendency", "reserve", "capacity"):
            scale = lam * a.capacity.value
            assert abs(getattr(b, name).value - lam * getattr(a, name).value) <= 1e-9 * scale


def test_network_asymmetry_symmetric():
    W = np.array([[1.0, 2.0, 0.5], [2.0, 0.0, 3.0], [0.5, 3.0, 1.0]])
    rep = network_asymmetry(from_matrix(W))
    assert rep.ratio[0] == 1 and rep.ratio[1] == pytest.approx(1, abs=1e-12)
    assert rep.labels == ("origin|destination", "destination|origin")


@pytest.mark.parametrize("k", [2, 3, 5])
def test_network_asymmetry_star(k):
    T = np.zeros((k + 1, k + 1))
    T[0, 1:] = 1.0  # hub 0 feeds k sinks
    rep = network_asymmetry(from_matrix(T))
    assert rep.h_y_given_z.value == 0
    assert rep.h_z_given_y.value == pytest.approx(math.log2(k), abs=1e-14)
    assert rep.degenerate and rep.ratio == (0.0, 1.0)
    assert rep.label_of(rep.smaller) == "origin|destination"


def test_network_asymmetry_matches_joint(rng):
    N = from_matrix(random_flows(rng, 5))
    rep = network_asymmetry(N)
    P = (N.flows / N.flows.sum()).tolist()
    assert rep.h_y_given_z.value == pytest.approx(oracle.cond_y_given_z(P), abs=1e-12)
    assert rep.h_z_given_y.value == pytest.approx(oracle.cond_z_given_y(P), abs=1e-12)
    assert rep.h_y_given_z.value == conditional_entropy(to_joint(N), Given.Y_GIVEN_Z).value


def test_isolated_nodes_kept_or_pruned():
    T = np.array([[0, 2.0, 0], [1.0, 0, 0], [0, 0, 0]])
    N = from_matrix(T, ["a", "b", "lonely"])
    full, pruned = indices(N), indices(prune_isolated(N))
    assert prune_isolated(N).node_labels == ("a", "b")
    assert full.measures.h_joint.value == pytest.approx(pruned.measures.h_joint.value, abs=1e-15)
    assert full.measures.mi.value == pytest.approx(pruned.measures.mi.value, abs=1e-15)
