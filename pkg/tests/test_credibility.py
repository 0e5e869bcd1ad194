"""Difference matrices, support kernels, and credibility vectors."""

import numpy as np
import pytest

from credfuse import (
    PBAGD,
    Frame,
    average_support_credibility,
    build_edmm,
    build_eem,
    conditional_credibility,
    edmm_eigenvalues,
    eigenvalue_credibility,
    event_evidence,
    initial_prob_from_eem,
    initial_prob_uniform,
    pbagd,
    support_matrix,
    vacuous,
)
from credfuse.credibility import (
    EventEvaluationMatrix,
    NonpositiveTauError,
    PairwiseDifferenceMatrix,
)


class TestBuildEdmm:
    def test_identical_evidence_gives_zero_matrix(self, frame3):
        ms = [vacuous(frame3)] * 3
        edmm = build_edmm(ms, PBAGD)
        np.testing.assert_array_equal(edmm.values, np.zeros((3, 3)))

    def test_zero_diagonal_and_symmetry(self, fault_case):
        edmm = build_edmm(fault_case, PBAGD)
        np.testing.assert_array_equal(np.diag(edmm.values), np.zeros(5))
        np.testing.assert_array_equal(edmm.values, edmm.values.T)

    def test_entries_match_direct_recomputation(self, fault_case):
        edmm = build_edmm(fault_case, PBAGD)
        for i in range(5):
            for j in range(5):
                if i != j:
                    assert edmm.values[i, j] == pytest.approx(
                        pbagd(fault_case[i], fault_case[j]), abs=1e-15
                    )

    def test_permutation_equivariance(self, fault_case):
        perm = [3, 0, 4, 1, 2]
        edmm = build_edmm(fault_case, PBAGD).values
        permuted = build_edmm([fault_case[i] for i in perm], PBAGD).values
        np.testing.assert_allclose(permuted, edmm[np.ix_(perm, perm)], atol=1e-15)

    def test_needs_two(self, fault_case):
        with pytest.raises(ValueError):
            build_edmm(fault_case[:1], PBAGD)


class TestBuildEem:
    def test_event_evidence_column_is_zero_at_own_event(self, frame3):
        eem = build_eem([event_evidence(frame3, 0)], frame3, PBAGD)
        assert eem.values[0, 0] == 0.0
        assert (eem.values[1:, 0] > 0).all()

    def test_fourth_report_supports_first_event_most(self, fault_case, frame3):
        eem = build_eem(fault_case, frame3, PBAGD)
        assert int(np.argmin(eem.values[0])) == 3

    def test_vacuous_evidence_equidistant_from_all_events(self, frame3):
        eem = build_eem([vacuous(frame3)], frame3, PBAGD)
        np.testing.assert_allclose(eem.values[:, 0], eem.values[0, 0])

    def test_entries_match_direct_recomputation(self, fault_case, frame3):
        eem = build_eem(fault_case, frame3, PBAGD)
        for j in range(3):
            assertion = event_evidence(frame3, j)
            for i, m in enumerate(fault_case):
                assert eem.values[j, i] == pytest.approx(pbagd(m, assertion), abs=1e-15)


class TestSupportMatrix:
    @pytest.fixture
    def eem(self, fault_case, frame3):
        return build_eem(fault_case, frame3, PBAGD)

    def test_zero_divergence_gives_full_support(self, frame3):
        eem = EventEvaluationMatrix(np.zeros((3, 1)), "pbagd", frame3)
        np.testing.assert_array_equal(support_matrix(eem, 200.0), np.ones((3, 1)))

    def test_doubling_tau_squares_support(self, eem):
        s1 = support_matrix(eem, 200.0)
        s2 = support_matrix(eem, 400.0)
        np.testing.assert_allclose(s2, s1**2, rtol=1e-12)

    def test_antitone_in_divergence(self, eem):
        support = support_matrix(eem, 200.0)
        order_d = np.argsort(eem.values, axis=None)
        order_s = np.argsort(-support, axis=None)
        np.testing.assert_array_equal(order_d, order_s)

    def test_rejects_nonpositive_tau(self, eem):
        with pytest.raises(NonpositiveTauError):
            support_matrix(eem, 0.0)


class TestConditionalCredibility:
    def test_single_evidence(self):
        cond = conditional_credibility(np.full((3, 1), 0.7))
        np.testing.assert_array_equal(cond, np.ones((3, 1)))

    def test_identical_columns_split_evenly(self):
        support = np.tile([[0.3], [0.5], [0.9]], (1, 2))
        cond = conditional_credibility(support)
        np.testing.assert_allclose(cond, 0.5)

    def test_rows_sum_to_one(self, fault_case, frame3):
        eem = build_eem(fault_case, frame3, PBAGD)
        cond = conditional_credibility(support_matrix(eem, 200.0))
        np.testing.assert_allclose(cond.sum(axis=1), 1.0, atol=1e-9)
        assert ((cond >= 0) & (cond <= 1)).all()


class TestAverageSupportCredibility:
    def test_all_identical_fall_back_uniform(self, frame3):
        edmm = build_edmm([vacuous(frame3)] * 4, PBAGD)
        np.testing.assert_allclose(average_support_credibility(edmm), 0.25)

    def test_two_evidence_split_evenly(self, fault_case):
        edmm = build_edmm(fault_case[:2], PBAGD)
        np.testing.assert_allclose(average_support_credibility(edmm), [0.5, 0.5])

    def test_matches_direct_formula(self, fault_case):
        edmm = build_edmm(fault_case[:3], PBAGD)
        cred = average_support_credibility(edmm)
        d = edmm.values
        total = sum(d[j, h] for j in range(3) for h in range(3) if h != j)
        for i in range(3):
            expected = sum(d[i, h] for h in range(3) if h != i) / total
            assert cred[i] == pytest.approx(expected, abs=1e-15)

    def test_similarity_variant_inverts_ranking(self, fault_case):
        edmm = build_edmm(fault_case, PBAGD)
        distance = average_support_credibility(edmm, variant="distance")
        similarity = average_support_credibility(edmm, variant="similarity")
        assert similarity.sum() == pytest.approx(1.0)
        assert np.argmax(distance) == np.argmin(similarity)
        # the disturbed fifth report is far from the cluster: low similarity
        assert np.argmin(similarity) == 4

    def test_unknown_variant(self, fault_case):
        with pytest.raises(ValueError):
            average_support_credibility(build_edmm(fault_case, PBAGD), variant="?")


class TestEigenvalueCredibility:
    def test_zero_matrix_falls_back_uniform(self):
        edmm = PairwiseDifferenceMatrix(np.zeros((4, 4)), "pbagd")
        np.testing.assert_allclose(eigenvalue_credibility(edmm), 0.25)

    def test_sums_to_one_nonnegative(self, fault_case):
        cred = eigenvalue_credibility(build_edmm(fault_case, PBAGD))
        assert cred.sum() == pytest.approx(1.0)
        assert (cred >= 0).all()

    def test_principal_scores_peak_at_one(self, fault_case):
        edmm = build_edmm(fault_case, PBAGD)
        _, vecs = np.linalg.eigh(edmm.values)
        principal = np.abs(vecs[:, -1])
        scores = principal / principal.max()
        np.testing.assert_allclose(
            eigenvalue_credibility(edmm), scores / scores.sum(), atol=1e-12
        )
        assert scores.max() == 1.0

    def test_eigenvalues_match_characteristic_polynomial(self):
        a, b, c = 0.3, 0.7, 0.2
        edmm = PairwiseDifferenceMatrix(
            np.array([[0, a, b], [a, 0, c], [b, c, 0]]), "test"
        )
        # char poly of this zero-diagonal symmetric matrix:
        # x^3 - (a^2+b^2+c^2) x - 2abc = 0
        roots = np.sort(np.roots([1.0, 0.0, -(a * a + b * b + c * c), -2 * a * b * c]))
        np.testing.assert_allclose(
            np.sort(edmm_eigenvalues(edmm)), np.real(roots), atol=1e-12
        )


class TestInitialProbabilities:
    def test_uniform(self, frame3):
        np.testing.assert_allclose(initial_prob_uniform(frame3), [1 / 3] * 3)
        np.testing.assert_allclose(initial_prob_uniform(Frame(("only",))), [1.0])

    def test_equal_rows_give_uniform(self, frame3):
        eem = EventEvaluationMatrix(np.full((3, 4), 0.2), "pbagd", frame3)
        np.testing.assert_allclose(initial_prob_from_eem(eem), [1 / 3] * 3)

    def test_sums_to_one(self, fault_case, frame3):
        eem = build_eem(fault_case, frame3, PBAGD)
        probs = initial_prob_from_eem(eem)
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert (probs >= 0).all()

    def test_better_supported_event_gets_higher_mass(self, fault_case, frame3):
        # four of five reports back the first event; its EEM row is smallest
        eem = build_eem(fault_case, frame3, PBAGD)
        probs = initial_prob_from_eem(eem)
        assert int(np.argmax(probs)) == int(np.argmin(eem.values.sum(axis=1)))

    def test_zero_rows_take_all_probability(self, frame3):
        values = np.array([[0.0, 0.0], [0.1, 0.2], [0.0, 0.0]])
        probs = initial_prob_from_eem(EventEvaluationMatrix(values, "pbagd", frame3))
        np.testing.assert_allclose(probs, [0.5, 0.0, 0.5])

    def test_all_zero_matrix_uniform(self, frame3):
        eem = EventEvaluationMatrix(np.zeros((3, 2)), "pbagd", frame3)
        np.testing.assert_allclose(initial_prob_from_eem(eem), [1 / 3] * 3)
