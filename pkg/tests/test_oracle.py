"""Tests for the dense-matrix oracle."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from ghzbell import (
    BellScenario,
    GhzDiagonalState,
    NumericalError,
    ParseError,
    all_splits,
    basis_pair,
    bell_value,
    bell_witness_state,
    ghz_pure,
    is_distillable_split,
    maximally_mixed,
    oracle,
    ppt_value,
    ppt_witness_state,
)
from helpers import random_density, random_ghz_state, random_hermitian


class TestBasisVectors:
    def test_examples(self):
        vec = oracle.pair_basis_vector(2, 0, 1)
        expected = np.array([1, 0, 0, 1]) / math.sqrt(2)
        np.testing.assert_allclose(vec, expected)
        vec = oracle.pair_basis_vector(3, 3, -1)
        assert vec[6] == pytest.approx(1 / math.sqrt(2))
        assert vec[1] == pytest.approx(-1 / math.sqrt(2))
        assert np.count_nonzero(vec) == 2

    def test_orthonormal_basis(self):
        n = 3
        vectors = [
            oracle.pair_basis_vector(n, j, sign)
            for j in range(1 << (n - 1))
            for sign in (1, -1)
        ]
        gram = np.array(
            [[abs(np.vdot(a, b)) for b in vectors] for a in vectors]
        )
        np.testing.assert_allclose(gram, np.eye(len(vectors)), atol=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            oracle.pair_basis_vector(3, 4, 1)
        with pytest.raises(ValueError):
            oracle.pair_basis_vector(3, 0, 2)


class TestDensify:
    def test_maximally_mixed_is_identity(self):
        rho = oracle.densify(maximally_mixed(3))
        np.testing.assert_allclose(rho, np.eye(8) / 8, atol=1e-15)

    def test_pure_ghz_corners(self):
        rho = oracle.densify(ghz_pure(2))
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[0, 3] = expected[3, 0] = expected[3, 3] = 0.5
        np.testing.assert_allclose(rho, expected, atol=1e-15)

    def test_witness_trace_and_rank(self):
        rho = oracle.densify(bell_witness_state(4))
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        eigs = oracle.eigenvalues(rho)
        assert int((eigs > 1e-12).sum()) == 5

    def test_x_shape(self):
        rng = np.random.default_rng(31)
        state = random_ghz_state(rng, 3)
        rho = oracle.densify(state)
        dim = 8
        for a, b in itertools.product(range(dim), repeat=2):
            if a != b and (a, b) not in ((0, dim - 1), (dim - 1, 0)):
                assert rho[a, b] == 0
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)

    def test_matches_projector_sum(self):
        rng = np.random.default_rng(32)
        state = random_ghz_state(rng, 3)
        total = np.zeros((8, 8), dtype=complex)
        for sign, weight in (
            (1, state.lambda0_plus), (-1, state.lambda0_minus)
        ):
            vec = oracle.pair_basis_vector(3, 0, sign)
            total += weight * np.outer(vec, vec.conj())
        for j, weight in state.lambdas.items():
            for sign in (1, -1):
                vec = oracle.pair_basis_vector(3, j, sign)
                total += weight * np.outer(vec, vec.conj())
        np.testing.assert_allclose(oracle.densify(state), total, atol=1e-14)

    def test_dense_cap(self):
        with pytest.raises(ValueError, match="capped"):
            oracle.densify(GhzDiagonalState(11, 1.0))


class TestAnalyzerMatrix:
    def test_structure(self):
        mat = oracle.analyzer_matrix(0.7)
        assert mat[0, 0] == 0 and mat[1, 1] == 0
        assert mat[1, 0] == pytest.approx(np.exp(0.7j))
        assert mat[0, 1] == pytest.approx(np.exp(-0.7j))
        np.testing.assert_allclose(mat, mat.conj().T)
        np.testing.assert_allclose(
            np.linalg.eigvalsh(mat), [-1.0, 1.0], atol=1e-14
        )

    def test_correlation_identity(self):
        # full product observable on the pure GHZ state gives cos(sum of
        # angles), for any angles
        rng = np.random.default_rng(33)
        for n in (2, 3, 4):
            rho = oracle.densify(ghz_pure(n))
            for _ in range(33):
                angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
                product = np.ones((1, 1), dtype=complex)
                for angle in angles:
                    product = np.kron(product, oracle.analyzer_matrix(angle))
                value = oracle.expectation(product, rho)
                assert value == pytest.approx(
                    math.cos(angles.sum()), abs=1e-10
                )


class TestBellOperators:
    GRID = [(2, 2), (2, 5), (3, 2), (3, 4), (4, 3)]

    @pytest.mark.parametrize("n,m", GRID)
    def test_sum_is_antidiagonal_traceless_hermitian(self, n, m):
        op = oracle.bell_sum_operator(BellScenario(n, m))
        dim = 1 << n
        assert abs(np.trace(op)) < 1e-12
        np.testing.assert_allclose(op, op.conj().T, atol=1e-12)
        mask = np.ones((dim, dim), dtype=bool)
        mask[np.arange(dim), np.arange(dim)[::-1]] = False
        assert np.abs(op[mask]).max() < 1e-12

    @pytest.mark.parametrize("n,m", GRID)
    def test_sum_matches_kronecker_route(self, n, m):
        scenario = BellScenario(n, m)
        fast = oracle.bell_sum_operator(scenario)
        slow = oracle.bell_sum_operator_direct(scenario)
        assert np.abs(fast - slow).max() < 1e-12

    def test_chsh_corner(self):
        op = oracle.bell_sum_operator(BellScenario(2, 2))
        assert op[0, 3] == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert op[3, 0] == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert abs(op[1, 2]) < 1e-12 and abs(op[2, 1]) < 1e-12

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (3, 4), (4, 6)])
    def test_matches_closed_form(self, n, m):
        report = oracle.compare_bell_operators(n, m)
        assert report.equal
        assert report.max_abs_deviation < 1e-12

    @pytest.mark.parametrize("n,m", [(2, 3), (3, 2), (4, 4)])
    def test_eigenvalues_two_valued(self, n, m):
        scenario = BellScenario(n, m)
        eigs = oracle.eigenvalues(oracle.bell_sum_operator(scenario))
        targets = np.array([-scenario.scale, 0.0, scenario.scale])
        deviation = np.abs(eigs[:, None] - targets[None, :]).min(axis=1)
        assert deviation.max() < 1e-9

    def test_closed_form_pattern(self):
        scenario = BellScenario(3, 2)
        op = oracle.bell_diagonal_operator(scenario)
        assert op[0, 7] == pytest.approx(scenario.scale)
        assert np.count_nonzero(op) == 2

    def test_term_budget(self):
        with pytest.raises(ValueError, match="budget"):
            oracle.bell_sum_operator(BellScenario(8, 12))
        with pytest.raises(ValueError, match="budget"):
            oracle.bell_sum_operator_direct(BellScenario(8, 12))

    def test_dense_cap(self):
        with pytest.raises(ValueError, match="capped"):
            oracle.bell_sum_operator(BellScenario(11, 2))


class TestExpectation:
    def test_identity_gives_trace_fraction(self):
        rng = np.random.default_rng(41)
        op = random_hermitian(rng, 8)
        value = oracle.expectation(op, np.eye(8, dtype=complex) / 8)
        assert value == pytest.approx(np.trace(op).real / 8, abs=1e-12)

    def test_analytic_contract(self):
        # the central check: dense expectation equals the closed form
        rng = np.random.default_rng(42)
        for n, m in [(2, 2), (3, 5), (4, 6)]:
            scenario = BellScenario(n, m)
            for _ in range(10):
                state = random_ghz_state(rng, n)
                rho = oracle.densify(state)
                closed = bell_value(state, scenario)
                diag = oracle.expectation(
                    oracle.bell_diagonal_operator(scenario), rho
                )
                summed = oracle.expectation(
                    oracle.bell_sum_operator(scenario), rho
                )
                assert diag == pytest.approx(closed, abs=1e-9)
                assert summed == pytest.approx(closed, abs=1e-9)

    def test_imaginary_residue_raises(self):
        op = np.zeros((4, 4), dtype=complex)
        op[0, 1] = 1.0  # not Hermitian, so tr(op rho) picks up 0.5j
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = rho[1, 1] = 0.5
        rho[0, 1], rho[1, 0] = -0.5j, 0.5j
        with pytest.raises(NumericalError, match="imaginary"):
            oracle.expectation(op, rho)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            oracle.expectation(np.eye(4, dtype=complex),
                               np.eye(8, dtype=complex) / 8)


class TestPptOperator:
    def test_headline_value(self):
        value = oracle.expectation(
            oracle.ppt_operator(3), oracle.densify(ppt_witness_state())
        )
        assert value == pytest.approx(4.0 / 3.0, abs=1e-10)

    def test_matches_closed_form(self):
        rng = np.random.default_rng(43)
        for _ in range(10):
            state = random_ghz_state(rng, 3)
            dense = oracle.expectation(
                oracle.ppt_operator(3), oracle.densify(state)
            )
            assert dense == pytest.approx(ppt_value(state), abs=1e-12)

    def test_spectrum(self):
        eigs = oracle.eigenvalues(oracle.ppt_operator(4))
        assert eigs[0] == pytest.approx(-8.0, abs=1e-12)
        assert eigs[-1] == pytest.approx(8.0, abs=1e-12)
        assert np.abs(eigs[1:-1]).max() < 1e-12

    def test_mixed_state_zero(self):
        value = oracle.expectation(
            oracle.ppt_operator(3), np.eye(8, dtype=complex) / 8
        )
        assert value == pytest.approx(0.0, abs=1e-15)


class TestPartialTranspose:
    def test_involution_trace_hermiticity(self):
        rng = np.random.default_rng(44)
        for n in (2, 3, 4, 5):
            dim = 1 << n
            rho = random_hermitian(rng, dim)
            for mask in (2, dim - 2):
                pt = oracle.partial_transpose(rho, mask)
                np.testing.assert_allclose(
                    oracle.partial_transpose(pt, mask), rho, atol=0
                )
                assert np.trace(pt) == pytest.approx(np.trace(rho).real)
                np.testing.assert_allclose(pt, pt.conj().T, atol=1e-12)

    def test_full_transpose_composition(self):
        # transposing one side then the other equals the full transpose
        rng = np.random.default_rng(45)
        rho = random_hermitian(rng, 8)
        a = oracle.partial_transpose(rho, 0b110)
        b = oracle.partial_transpose(a, 0b001)
        np.testing.assert_allclose(b, rho.T, atol=0)

    def test_complement_mask_same_minimum(self):
        rng = np.random.default_rng(46)
        for _ in range(5):
            state = random_ghz_state(rng, 4)
            rho = oracle.densify(state)
            for mask in (0b0010, 0b0110, 0b1010):
                low = oracle.min_eigenvalue(
                    oracle.partial_transpose(rho, mask)
                )
                high = oracle.min_eigenvalue(
                    oracle.partial_transpose(rho, 0b1111 ^ mask)
                )
                assert low == pytest.approx(high, abs=1e-9)

    def test_bell_pair(self):
        rho = oracle.densify(ghz_pure(2))
        low = oracle.min_eigenvalue(oracle.partial_transpose(rho, 0b10))
        assert low == pytest.approx(-0.5, abs=1e-10)

    def test_product_state_unchanged(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0
        for mask in (1, 2):
            np.testing.assert_allclose(
                oracle.partial_transpose(rho, mask), rho, atol=0
            )

    def test_witness_boundary_split_is_ppt(self):
        rho = oracle.densify(bell_witness_state(4))
        split = next(s for s in all_splits(4) if s.j == 3)
        low = oracle.min_eigenvalue(
            oracle.partial_transpose(rho, split.transpose_mask)
        )
        assert low >= -1e-12

    def test_trivial_masks_rejected(self):
        rho = np.eye(8, dtype=complex) / 8
        for mask in (0, 7):
            with pytest.raises(ValueError):
                oracle.partial_transpose(rho, mask)

    def test_predicted_spectrum(self):
        # the PT spectrum of a GHZ-diagonal state in closed form: diagonal
        # weights, except the transposed pair turns into lambda_j +/- delta/2
        rng = np.random.default_rng(47)
        for _ in range(10):
            n = int(rng.integers(2, 5))
            state = random_ghz_state(rng, n)
            rho = oracle.densify(state)
            dim = 1 << n
            for split in all_splits(n):
                mask = split.transpose_mask
                predicted = []
                for idx in range(dim):
                    if idx in (mask, (dim - 1) ^ mask):
                        continue
                    predicted.append(rho[idx, idx].real)
                pair_weight = state.weight(split.j)
                predicted.append(pair_weight + state.delta / 2)
                predicted.append(pair_weight - state.delta / 2)
                actual = oracle.eigenvalues(
                    oracle.partial_transpose(rho, mask)
                )
                np.testing.assert_allclose(
                    actual, np.sort(predicted), atol=1e-10
                )

    def test_dichotomy_against_weights(self):
        rng = np.random.default_rng(48)
        for _ in range(25):
            n = int(rng.integers(3, 6))
            state = random_ghz_state(rng, n)
            rho = oracle.densify(state)
            for split in all_splits(n):
                low = oracle.min_eigenvalue(
                    oracle.partial_transpose(rho, split.transpose_mask)
                )
                if is_distillable_split(state, split.j):
                    assert low < -1e-12, (state, split.j, low)
                else:
                    assert low >= -1e-10, (state, split.j, low)


class TestEigenvalues:
    def test_matches_numpy(self):
        rng = np.random.default_rng(49)
        for dim in (2, 4, 8, 16):
            mat = random_hermitian(rng, dim)
            np.testing.assert_allclose(
                oracle.eigenvalues(mat), np.linalg.eigvalsh(mat), atol=1e-11
            )

    def test_rejects_non_hermitian(self):
        mat = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError, match="Hermitian"):
            oracle.eigenvalues(mat)

    def test_min_eigenvalue(self):
        assert oracle.min_eigenvalue(
            np.eye(4, dtype=complex) / 4
        ) == pytest.approx(0.25, abs=1e-12)
        with pytest.raises(ValueError):
            oracle.min_eigenvalue(np.eye(4, dtype=complex), tol=0.0)


class TestDepolarize:
    def test_fixed_point_on_family(self):
        rng = np.random.default_rng(51)
        for _ in range(20):
            n = int(rng.integers(2, 6))
            state = random_ghz_state(rng, n)
            back = oracle.depolarize(oracle.densify(state))
            assert back.lambda0_plus == pytest.approx(
                state.lambda0_plus, abs=1e-12
            )
            assert back.lambda0_minus == pytest.approx(
                state.lambda0_minus, abs=1e-12
            )
            for j in range(1, 1 << (n - 1)):
                assert back.weight(j) == pytest.approx(
                    state.weight(j), abs=1e-12
                )

    def test_identity_input(self):
        state = oracle.depolarize(np.eye(8, dtype=complex) / 8)
        assert state.delta == pytest.approx(0.0, abs=1e-15)
        assert state.lambda0_plus == pytest.approx(0.125, abs=1e-15)
        assert all(
            w == pytest.approx(0.125, abs=1e-15)
            for w in state.lambdas.values()
        )

    def test_phase_flipped_ghz(self):
        # a pure state (|00..0> + exp(i theta)|11..1>)/sqrt(2) depolarizes
        # to lambda0+/- = (1 +/- cos theta)/2
        psi = np.zeros(8, dtype=complex)
        psi[0] = 1 / math.sqrt(2)
        psi[7] = -1 / math.sqrt(2)  # theta = pi
        state = oracle.depolarize(np.outer(psi, psi.conj()))
        assert state.lambda0_minus == pytest.approx(1.0, abs=1e-15)
        psi[7] = 1j / math.sqrt(2)  # theta = pi/2
        state = oracle.depolarize(np.outer(psi, psi.conj()))
        assert state.lambda0_plus == pytest.approx(0.5, abs=1e-12)
        assert state.lambda0_minus == pytest.approx(0.5, abs=1e-12)
        assert dict(state.lambdas) == {}

    def test_random_densities_give_valid_states(self):
        rng = np.random.default_rng(52)
        for _ in range(15):
            n = int(rng.integers(2, 4))
            state = oracle.depolarize(random_density(rng, 1 << n))
            total = state.lambda0_plus + state.lambda0_minus + 2 * sum(
                state.lambdas.values()
            )
            assert total == pytest.approx(1.0, abs=1e-9)

    def test_rejects_non_density(self):
        with pytest.raises(ValueError, match="trace"):
            oracle.depolarize(np.eye(4, dtype=complex))
        skew = np.eye(4, dtype=complex) / 4
        skew[0, 1] = 1e-3
        with pytest.raises(ValueError, match="Hermitian"):
            oracle.depolarize(skew)
        negative = np.diag([0.75, 0.75, -0.25, -0.25]).astype(complex)
        with pytest.raises(ValueError, match="positive"):
            oracle.depolarize(negative)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            oracle.depolarize(np.eye(6, dtype=complex) / 6)


class TestDenseFiles:
    def test_roundtrip(self):
        rng = np.random.default_rng(53)
        mat = random_hermitian(rng, 8)
        back = oracle.parse_dense_file(oracle.format_dense_file(mat))
        np.testing.assert_allclose(back, mat, atol=0)

    def test_comments_ignored(self):
        text = (
            "# header comment\n"
            "dense\n"
            "N 2\n"
            "1,0 0,0 0,0 0,0  # row\n"
            "0,0 0,0 0,0 0,0\n\n"
            "0,0 0,0 0,0 0,0\n"
            "0,0 0,0 0,0 0,0\n"
        )
        mat = oracle.parse_dense_file(text)
        assert mat[0, 0] == 1.0
        assert np.count_nonzero(mat) == 1

    @pytest.mark.parametrize("text", [
        "",
        "matrix\nN 2\n",
        "dense\n",
        "dense\nM 2\n1,0\n",
        "dense\nN x\n",
        "dense\nN 1\n1,0 0,0\n0,0 1,0\n",
        "dense\nN 2\n1,0 0,0 0,0 0,0\n",
        "dense\nN 2\n1,0 0,0 0,0\n0,0 0,0 0,0 0,0\n"
        "0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n",
        "dense\nN 2\n1,0,5 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n"
        "0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n",
        "dense\nN 2\nx,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n"
        "0,0 0,0 0,0 0,0\n0,0 0,0 0,0 0,0\n",
    ])
    def test_malformed_content(self, text):
        with pytest.raises(ParseError):
            oracle.parse_dense_file(text)

    def test_cap_is_a_domain_error(self):
        header = "dense\nN 11\n"
        with pytest.raises(ValueError) as err:
            oracle.parse_dense_file(header)
        assert not isinstance(err.value, ParseError)

    def test_file_io(self, tmp_path):
        path = tmp_path / "rho.dense"
        rho = oracle.densify(ppt_witness_state())
        oracle.write_dense_file(rho, path)
        np.testing.assert_allclose(oracle.read_dense_file(path), rho, atol=0)
