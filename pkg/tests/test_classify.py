"""Tests for factorization recovery, classification, and the ensemble index."""
import math

import numpy as np
import pytest

from entdex.classify import (
    Ensemble,
    FactorizationError,
    _validate_blocks,
    classify,
    ensemble_index,
    entanglement_index,
    finest_factorization,
    minimal_pure_subset,
    mixed_product_split,
    split_factors,
)
from entdex.construct import basis_state, ghz, ghz_product, random_local_unitary
from entdex.partitions import enumerate_partitions
from entdex.states import (
    apply_local_unitary,
    density_matrix,
    marginal_purity,
    permute_qubits,
    pure_state,
    tensor,
    to_density,
)

S2 = 1.0 / math.sqrt(2.0)


class TestMinimalPureSubset:
    def test_basis_product(self):
        assert minimal_pure_subset(basis_state([0, 0]), 0) == (0,)

    def test_ghz3_plus_spectator(self):
        psi = tensor(ghz(3), basis_state([0]))
        assert minimal_pure_subset(psi, 1) == (0, 1, 2)
        assert minimal_pure_subset(psi, 3) == (3,)

    def test_permuted_bell(self):
        state, _ = ghz_product([2, 1], perm=(0, 2, 1))  # Bell on {0,2}, |0> on 1
        assert minimal_pure_subset(state, 0) == (0, 2)
        assert minimal_pure_subset(state, 1) == (1,)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            minimal_pure_subset(ghz(2), 2)


class TestFinestFactorization:
    def test_ground_truth_blocks(self):
        state, blocks = ghz_product([2, 1, 1])
        assert finest_factorization(state) == blocks == ((0, 1), (2,), (3,))

    def test_fully_separable(self):
        assert finest_factorization(basis_state([0] * 5)) == tuple((q,) for q in range(5))

    def test_ghz5_single_block(self):
        assert finest_factorization(ghz(5)) == ((0, 1, 2, 3, 4),)

    def test_overlap_is_an_error(self):
        with pytest.raises(FactorizationError, match="overlap"):
            _validate_blocks(3, [(0, 1), (1, 2), (2,)])
        with pytest.raises(FactorizationError, match="overlap"):
            _validate_blocks(2, [(0,), (0, 1)])

    def test_missing_coverage_is_an_error(self):
        with pytest.raises(FactorizationError, match="cover"):
            _validate_blocks(3, [(0, 1)])


class TestEntanglementIndex:
    def test_bell(self):
        assert entanglement_index(ghz(2)) == 1

    def test_separable_pair(self):
        assert entanglement_index(basis_state([0, 0])) == 0

    @pytest.mark.parametrize("m", range(2, 7))
    def test_ghz_matches_pair_count(self, m):
        assert entanglement_index(ghz(m)) == m - 1 == (m - 1) * entanglement_index(ghz(2))


class TestClassify:
    def test_dressed_three_two(self):
        state, _ = ghz_product([3, 2], lu_seed=7)
        report = classify(state)
        assert report.shape == (3, 2)
        assert report.index == 3
        assert report.label == "entangled class E=3"

    def test_fully_separable(self):
        report = classify(basis_state([0, 0, 0, 0]))
        assert report.shape == (1, 1, 1, 1)
        assert report.index == 0
        assert report.label == "fully separable"
        assert report.warning is None

    def test_ghz4(self):
        report = classify(ghz(4))
        assert report.shape == (4,)
        assert report.index == 3

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_round_trip_all_partitions(self, n):
        rng = np.random.default_rng(n)
        for shape in enumerate_partitions(n):
            for _ in range(5):
                perm = [int(x) for x in rng.permutation(n)]
                state, blocks = ghz_product(shape, perm=perm, lu_seed=int(rng.integers(2**32)))
                report = classify(state)
                assert report.blocks == blocks
                assert report.shape == shape
                assert report.index == n - len(shape)

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(17)
        for shape in [(2, 2), (3, 1), (4,)]:
            state, _ = ghz_product(shape, lu_seed=int(rng.integers(2**32)))
            before = classify(state)
            after = classify(apply_local_unitary(state, random_local_unitary(4, rng)))
            assert (before.blocks, before.shape, before.index) == (
                after.blocks,
                after.shape,
                after.index,
            )

    def test_additivity(self):
        rng = np.random.default_rng(23)
        for shape_a, shape_b in [((2,), (1,)), ((3,), (2, 1)), ((2, 2), (3,))]:
            a, _ = ghz_product(shape_a, lu_seed=int(rng.integers(2**32)))
            b, _ = ghz_product(shape_b, lu_seed=int(rng.integers(2**32)))
            assert entanglement_index(tensor(a, b)) == entanglement_index(
                a
            ) + entanglement_index(b)

    def test_permutation_covariance(self):
        state, blocks = ghz_product([2, 2, 1], lu_seed=5)
        perm = [3, 0, 4, 1, 2]
        moved = permute_qubits(state, perm)
        expected = tuple(sorted(tuple(sorted(perm[q] for q in b)) for b in blocks))
        report = classify(moved)
        assert report.blocks == expected
        assert report.shape == (2, 2, 1)
        assert report.index == 2

    def test_near_threshold_warning(self):
        # purity defect of the single-qubit marginal lands inside [tol, 10*tol]
        theta = math.sqrt(1e-9)  # defect ~ 2*theta^2 = 2e-9
        psi = pure_state([math.cos(theta), 0.0, 0.0, math.sin(theta)])
        report = classify(psi, tol=1e-9)
        assert report.shape == (2,)
        assert report.warning is not None

        # well below tol the state counts as separable, with no warning
        tiny = math.sqrt(1e-12)
        psi = pure_state([math.cos(tiny), 0.0, 0.0, math.sin(tiny)])
        report = classify(psi, tol=1e-9)
        assert report.shape == (1, 1)
        assert report.warning is None

    def test_w_state_counts_as_one_block(self):
        # equal-weight one-excitation state: no pure proper marginal, so the
        # factorization classifier puts it in the same class as a width-3 block
        w = pure_state([0, 1 / math.sqrt(3), 1 / math.sqrt(3), 0, 1 / math.sqrt(3), 0, 0, 0])
        report = classify(w)
        assert report.shape == (3,)
        assert report.index == 2


class TestMinimalBlockUniqueness:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_ground_truth_blocks_recovered_per_qubit(self, n):
        rng = np.random.default_rng(n + 100)
        for shape in enumerate_partitions(n):
            state, blocks = ghz_product(shape, lu_seed=int(rng.integers(2**32)))
            lookup = {q: b for b in blocks for q in b}
            for i in range(n):
                assert minimal_pure_subset(state, i) == lookup[i]


class TestSplitFactors:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_reconstructs_ground_truth_products(self, n):
        rng = np.random.default_rng(n)
        for shape in enumerate_partitions(n):
            if len(shape) == 1:
                continue
            state, blocks = ghz_product(shape, lu_seed=int(rng.integers(2**32)))
            for block in blocks:
                assert marginal_purity(state, block) >= 1.0 - 1e-9
                a, b = split_factors(state, block)
                rest = [q for q in range(n) if q not in block]
                fronted = permute_qubits(
                    state, _positions_to_perm(list(block) + rest)
                )
                assert np.linalg.norm(fronted.vec - np.kron(a.vec, b.vec)) <= 1e-4

    def test_rejects_trivial_cuts(self):
        with pytest.raises(ValueError):
            split_factors(ghz(2), ())
        with pytest.raises(ValueError):
            split_factors(ghz(2), (0, 1))


def _positions_to_perm(order):
    """Permutation sending old qubit order[i] to position i."""
    perm = [0] * len(order)
    for pos, q in enumerate(order):
        perm[q] = pos
    return perm


class TestEnsembleIndex:
    def test_single_full_block(self):
        for n in (2, 4, 6):
            e = Ensemble(n, ((1.0, (n,)),))
            assert ensemble_index(e) == n - 1

    def test_uniform_over_partitions_of_four(self):
        terms = tuple((0.2, parts) for parts in enumerate_partitions(4))
        assert abs(ensemble_index(Ensemble(4, terms)) - 1.6) <= 1e-12

    def test_separable_terms_give_zero(self):
        e = Ensemble(3, ((0.25, (1, 1, 1)), (0.75, basis_state([0, 1, 0]))))
        assert ensemble_index(e) == 0.0

    def test_state_payloads(self):
        e = Ensemble(2, ((0.5, ghz(2)), (0.5, basis_state([0, 0]))))
        assert abs(ensemble_index(e) - 0.5) <= 1e-12

    def test_concatenation_linearity(self):
        e1 = Ensemble(4, ((1.0, (4,)),))
        e2 = Ensemble(4, ((0.5, (2, 2)), (0.5, (1, 1, 1, 1))))
        for w in (0.25, 0.5, 0.9):
            terms = tuple((w * p, payload) for p, payload in e1.terms) + tuple(
                ((1 - w) * p, payload) for p, payload in e2.terms
            )
            combined = ensemble_index(Ensemble(4, terms))
            expected = w * ensemble_index(e1) + (1 - w) * ensemble_index(e2)
            assert abs(combined - expected) <= 1e-12

    def test_validation(self):
        with pytest.raises(ValueError, match="sum"):
            Ensemble(4, ((0.5, (4,)), (0.4, (2, 2))))
        with pytest.raises(ValueError, match="sum to 4"):
            Ensemble(4, ((1.0, (2, 1)),))
        with pytest.raises(ValueError, match="qubits"):
            Ensemble(3, ((1.0, ghz(2)),))
        with pytest.raises(ValueError, match="probabilities"):
            Ensemble(2, ((0.0, (2,)), (1.0, (1, 1))))


class TestMixedProductSplit:
    def test_product_of_bell_and_mixed_qubit(self):
        rho = density_matrix(np.kron(to_density(ghz(2)).mat, np.eye(2) / 2))
        assert mixed_product_split(rho) == ((0, 1), (2,))

    def test_ghz3_density_has_no_split(self):
        assert mixed_product_split(to_density(ghz(3))) == ((0, 1, 2),)

    def test_maximally_mixed_splits_fully(self):
        rho = density_matrix(np.eye(4) / 4)
        assert mixed_product_split(rho) == ((0,), (1,))

    def test_interleaved_block(self):
        # maximally mixed qubit 1 sandwiched inside a Bell pair on {0,2}
        psi0 = permute_qubits(tensor(ghz(2), basis_state([0])), (0, 2, 1))
        psi1 = permute_qubits(tensor(ghz(2), basis_state([1])), (0, 2, 1))
        rho = density_matrix(
            0.5 * to_density(psi0).mat + 0.5 * to_density(psi1).mat
        )
        assert mixed_product_split(rho) == ((0, 2), (1,))
