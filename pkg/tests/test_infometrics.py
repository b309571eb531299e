import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flowinfo.dist import (
    JointDistribution,
    Marginal,
    diagonal_coupling,
    from_weights,
    pairwise_joint,
    product_of_marginals,
    sample_joint,
    sample_triple,
)
from flowinfo.infometrics import (
    DomainError,
    Given,
    asymmetry_report,
    conditional_entropy,
    entropy,
    identity_residuals,
    information_content,
    joint_entropy,
    measure_report,
    mutual_information,
    mutual_information_bits,
    surprisal_bound_counterexample,
    variation_bits,
    variation_of_information,
)
from flowinfo.logunits import BIT, BYTE, CDROM, NAT, REGISTRY

import oracle

DIAG = from_weights([[1, 0], [0, 1]])
UNIFORM = from_weights([[1, 1], [1, 1]])
# Y uniform on 4 outcomes, Z = Y // 2
PAIRED = JointDistribution([[0.25, 0], [0.25, 0], [0, 0.25], [0, 0.25]])


# surprisal ---------------------------------------------------------------------


def test_information_content_examples():
    assert information_content(0.5).value == 1.0
    assert information_content(1.0).value == 0.0
    assert information_content(0.0).value == math.inf
    assert information_content(0.25, BYTE).value == 2 / 8
    assert information_content(0.25, "byte").unit == BYTE


@pytest.mark.parametrize("p", [-0.1, 1.0000001, math.nan])
def test_information_content_domain(p):
    with pytest.raises(DomainError):
        information_content(p)


# entropy -------------------------------------------------------------------------


def test_entropy_examples():
    assert entropy(Marginal.uniform(2)).value == 1.0
    assert entropy(Marginal([1.0, 0.0, 0.0])).value == 0.0
    assert entropy(Marginal([0.5, 0.25, 0.25])).value == 1.5


@given(st.integers(1, 64))
def test_entropy_bounded_by_log_n(n):
    m = Marginal(np.random.default_rng(n).dirichlet(np.ones(n)))
    h = entropy(m).value
    assert -1e-12 <= h <= math.log2(n) + 1e-12


def test_entropy_monotone_on_uniform():
    hs = [entropy(Marginal.uniform(n)).value for n in range(1, 65)]
    assert all(b > a for a, b in zip(hs, hs[1:]))
    assert hs[63] == pytest.approx(6.0, abs=1e-14)


def test_joint_entropy_examples(rng):
    assert joint_entropy(DIAG).value == 1.0
    assert joint_entropy(UNIFORM).value == 2.0
    J = sample_joint(3, 3, rng)
    P = J.probs.tolist()
    assert joint_entropy(J).value == pytest.approx(oracle.cond_y_given_z(P) + oracle.entropy(J.col_probs.tolist()), abs=1e-9)


# mutual information ----------------------------------------------------------------


def test_mutual_information_examples(rng):
    assert mutual_information(product_of_marginals(sample_joint(3, 4, rng))).value == pytest.approx(0, abs=1e-15)
    assert mutual_information(DIAG).value == 1.0
    J = sample_joint(4, 4, rng)
    P = J.probs.tolist()
    expected = oracle.entropy(J.row_probs.tolist()) + oracle.entropy(J.col_probs.tolist()) - oracle.joint_entropy(P)
    assert mutual_information(J).value == pytest.approx(expected, abs=1e-9)


def test_mutual_information_terms_can_be_negative():
    J = JointDistribution([[0.4, 0.1], [0.1, 0.4]])
    r, c = J.row_probs, J.col_probs
    terms = [J.probs[i, j] * math.log2(J.probs[i, j] / (r[i] * c[j])) for i in range(2) for j in range(2)]
    assert min(terms) < 0
    assert mutual_information(J).value > 0


@settings(max_examples=300)
@given(st.sampled_from([(2, 2), (3, 3), (4, 7), (10, 10)]), st.integers(0, 2**32 - 1))
def test_gibbs_and_symmetry(shape, seed):
    J = sample_joint(*shape, seed)
    mi = mutual_information_bits(J)
    assert mi >= -1e-9
    assert mutual_information_bits(J.transpose()) == pytest.approx(mi, abs=1e-12)


# conditional entropies -----------------------------------------------------------


def test_conditional_entropy_functional_dependence():
    assert conditional_entropy(PAIRED, Given.Z_GIVEN_Y).value == 0.0
    assert conditional_entropy(PAIRED, Given.Y_GIVEN_Z).value == pytest.approx(1.0, abs=1e-15)
    assert conditional_entropy(PAIRED, "y_given_z").value == pytest.approx(1.0, abs=1e-15)


def test_conditional_entropy_independent(rng):
    J = product_of_marginals(sample_joint(3, 5, rng))
    hy = entropy(J.row_marginal()).value
    assert conditional_entropy(J, Given.Y_GIVEN_Z).value == pytest.approx(hy, abs=1e-12)


def test_conditional_entropies_sum_to_vi(rng):
    J = sample_joint(3, 3, rng)
    P = J.probs.tolist()
    s = oracle.cond_y_given_z(P) + oracle.cond_z_given_y(P)
    assert variation_of_information(J).value == pytest.approx(s, abs=1e-9)
    total = conditional_entropy(J, Given.Y_GIVEN_Z).value + conditional_entropy(J, Given.Z_GIVEN_Y).value
    assert total == pytest.approx(s, abs=1e-9)


# variation of information ----------------------------------------------------------


def test_variation_examples():
    assert variation_of_information(DIAG).value == 0.0
    assert variation_of_information(UNIFORM).value == 2.0


@settings(max_examples=200)
@given(st.sampled_from([(2, 2, 2), (3, 3, 3), (2, 4, 3)]), st.integers(0, 2**32 - 1))
def test_variation_metric_axioms(shape, seed):
    T = sample_triple(shape, seed)
    vi = {(a, b): variation_bits(pairwise_joint(T, a, b)) for a in range(3) for b in range(3) if a != b}
    nested = T.probs.tolist()
    for (a, b), v in vi.items():
        assert v >= -1e-12
        assert v == pytest.approx(vi[b, a], abs=1e-12)
        assert v == pytest.approx(oracle.variation(oracle.marginal_pair(nested, a, b)), abs=1e-12)
    for y, w, z in [(0, 1, 2), (0, 2, 1), (1, 0, 2)]:
        assert vi[y, z] <= vi[y, w] + vi[w, z] + 1e-9


@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_variation_zero_on_diagonal_coupling(n, seed):
    m = Marginal(np.random.default_rng(seed).dirichlet(np.ones(n)))
    assert abs(variation_bits(diagonal_coupling(m))) <= 1e-12


# asymmetry -----------------------------------------------------------------------------


def test_asymmetry_degenerate():
    rep = asymmetry_report(PAIRED)
    assert rep.degenerate and rep.ratio == (0.0, 1.0)
    assert rep.smaller is Given.Z_GIVEN_Y
    assert rep.h_y_given_z.value == pytest.approx(1.0, abs=1e-15)
    assert rep.ratio_text() == "0:1"


def test_asymmetry_symmetric_matrix(rng):
    W = rng.random((4, 4))
    rep = asymmetry_report(from_weights(W + W.T))
    assert not rep.degenerate
    assert rep.ratio[0] == 1.0
    assert rep.ratio[1] == pytest.approx(1.0, abs=1e-12)


def test_asymmetry_ratio_is_quotient(rng):
    J = sample_joint(3, 3, rng)
    rep = asymmetry_report(J)
    lo, hi = sorted([rep.h_y_given_z.value, rep.h_z_given_y.value])
    assert rep.ratio == (1.0, pytest.approx(hi / lo, rel=1e-15))


def test_asymmetry_both_zero():
    rep = asymmetry_report(DIAG)
    assert rep.degenerate and rep.ratio == (0.0, 0.0)


# surprisal bound ---------------------------------------------------------------------


def test_counterexample_examples():
    assert surprisal_bound_counterexample(DIAG) == (-0.25, (0, 1))
    assert surprisal_bound_counterexample(UNIFORM) == (0.0, (0, 0))


def test_counterexample_with_zero_cell_matches_scan(rng):
    W = rng.random((3, 3))
    W[1, 2] = 0.0
    J = from_weights(W)
    gap, cell = surprisal_bound_counterexample(J)
    o_gap, o_cell = oracle.min_gap_scan(J.probs.tolist())
    assert gap < 0
    assert cell == o_cell and gap == pytest.approx(o_gap, abs=1e-16)


def test_counterexample_cell_exceeds_claimed_maximum():
    gap, (i, j) = surprisal_bound_counterexample(DIAG)
    s = information_content(DIAG.probs[i, j]).value
    s_star = information_content(DIAG.row_probs[i] * DIAG.col_probs[j]).value
    assert s == math.inf and s_star == 2.0 and s > s_star


# residuals and reports -------------------------------------------------------------------


def test_identity_residuals_exact_cases():
    for J in (DIAG, JointDistribution([[1.0]])):
        res = identity_residuals(J)
        assert res.as_dict() == dict.fromkeys(res.as_dict(), 0.0)
    single = measure_report(JointDistribution([[1.0]]))
    assert all(getattr(single, k).value == 0 for k in ("h_y", "h_z", "h_joint", "mi", "vi"))


@settings(max_examples=200)
@given(st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_identity_residuals_small(rows, cols, seed):
    assert identity_residuals(sample_joint(rows, cols, seed)).max() <= 1e-9


def test_measure_report_invariants(rng):
    rep = measure_report(sample_joint(5, 3, rng), NAT)
    assert rep.unit == NAT
    lhs = rep.h_joint.value
    rhs = rep.mi.value + rep.h_y_given_z.value + rep.h_z_given_y.value
    assert lhs == pytest.approx(rhs, abs=1e-9)
    assert rep.residual_chain_rule <= 1e-9 and rep.residual_decomposition <= 1e-9


@pytest.mark.parametrize("unit", sorted(REGISTRY.values(), key=lambda u: u.symbol), ids=lambda u: u.symbol)
def test_unit_covariance(unit, rng):
    J = sample_joint(4, 6, rng)
    in_bits = measure_report(J, BIT)
    in_unit = measure_report(J, unit)
    for name in ("h_y", "h_z", "h_joint", "mi", "h_y_given_z", "h_z_given_y", "vi"):
        expected = getattr(in_bits, name).value / unit.bits_per_unit
        assert getattr(in_unit, name).value == pytest.approx(expected, rel=1e-12)


def test_entropy_additive_under_independence(rng):
    for _ in range(100):
        J = product_of_marginals(sample_joint(int(rng.integers(1, 8)), int(rng.integers(1, 8)), rng))
        hy, hz = entropy(J.row_marginal()).value, entropy(J.col_marginal()).value
        assert joint_entropy(J).value == pytest.approx(hy + hz, abs=1e-9)


def test_cdrom_unit_measures():
    assert joint_entropy(UNIFORM, CDROM).value == pytest.approx(2 / 5_455_872_000, rel=1e-15)
