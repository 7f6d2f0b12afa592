import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.errors import NumericalError
from src.linalg.numerics import orthonormal_basis, project_out, pseudo_inverse, quantize_phase, svd

from .conftest import random_complex

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=12)


class TestSvd:
    def test_identity(self):
        u, s, v = svd(np.eye(3))
        np.testing.assert_allclose(s, [1.0, 1.0, 1.0])
        np.testing.assert_allclose(np.abs(u.conj().T @ v), np.eye(3), atol=1e-12)

    def test_diagonal(self):
        _, s, _ = svd(np.diag([1.0, 3.0]))
        np.testing.assert_allclose(s, [3.0, 1.0])

    def test_returns_v_not_vh(self, rng):
        a = random_complex(rng, 4, 2)
        u, s, v = svd(a)
        assert v.shape == (2, 2)
        np.testing.assert_allclose(a @ v, u * s, atol=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(rows=dims, cols=dims, seed=seeds)
    def test_reconstruction_and_orthonormality(self, rows, cols, seed):
        a = random_complex(np.random.default_rng(seed), rows, cols)
        u, s, v = svd(a)
        scale = np.linalg.norm(a)
        assert np.linalg.norm(a - (u * s) @ v.conj().T) <= 1e-9 * scale
        assert np.all(np.diff(s) <= 0)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(len(s)), atol=1e-9)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(len(s)), atol=1e-9)

    def test_large_matrix(self, rng):
        a = random_complex(rng, 256, 256)
        u, s, v = svd(a)
        assert np.linalg.norm(a - (u * s) @ v.conj().T) <= 1e-9 * np.linalg.norm(a)

    def test_rejects_non_finite(self):
        with pytest.raises(NumericalError, match="2x2") as excinfo:
            svd(np.array([[1.0, np.nan], [0.0, 1.0]]))
        assert excinfo.value.shape == (2, 2)
        assert excinfo.value.kind == "numerical"

    def test_rejects_empty(self):
        with pytest.raises(NumericalError):
            svd(np.zeros((0, 3)))


class TestPseudoInverse:
    def test_identity(self):
        np.testing.assert_allclose(pseudo_inverse(np.eye(2)), np.eye(2))

    def test_column_vector(self):
        np.testing.assert_allclose(pseudo_inverse(np.array([[2.0], [0.0]])), [[0.5, 0.0]])

    def test_full_column_rank(self, rng):
        a = random_complex(rng, 5, 2)
        np.testing.assert_allclose(pseudo_inverse(a) @ a, np.eye(2), atol=1e-8)

    def test_zero_matrix(self):
        out = pseudo_inverse(np.zeros((3, 2)))
        assert out.shape == (2, 3)
        assert not np.any(out)

    @settings(max_examples=50, deadline=None)
    @given(rank=st.integers(min_value=1, max_value=3), seed=seeds)
    def test_moore_penrose_identities_rank_deficient(self, rank, seed):
        generator = np.random.default_rng(seed)
        a = random_complex(generator, 6, rank) @ random_complex(generator, rank, 5)
        p = pseudo_inverse(a)
        tol = 1e-8 * max(np.linalg.norm(a), 1.0) * max(np.linalg.norm(p), 1.0)
        assert np.linalg.norm(a @ p @ a - a) <= tol
        assert np.linalg.norm(p @ a @ p - p) <= tol
        assert np.linalg.norm((a @ p).conj().T - a @ p) <= tol
        assert np.linalg.norm((p @ a).conj().T - p @ a) <= tol


class TestProjectOut:
    def test_full_overlap(self):
        e1 = np.eye(4)[:, :1]
        np.testing.assert_allclose(project_out(e1, e1), np.zeros((4, 1)), atol=1e-15)

    def test_orthogonal_input(self):
        e = np.eye(4)
        np.testing.assert_allclose(project_out(e[:, 1:2], e[:, :1]), e[:, 1:2])

    def test_empty_subspace_returns_copy(self, rng):
        b = random_complex(rng, 5, 2)
        out = project_out(b, np.zeros((5, 0)))
        np.testing.assert_array_equal(out, b)
        assert out is not b

    def test_row_mismatch(self, rng):
        with pytest.raises(NumericalError):
            project_out(random_complex(rng, 5, 1), random_complex(rng, 4, 1))

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds)
    def test_orthogonality_and_idempotence(self, seed):
        generator = np.random.default_rng(seed)
        x = random_complex(generator, 8, 3)
        b = random_complex(generator, 8, 2)
        out = project_out(b, x)
        assert np.linalg.norm(x.conj().T @ out) <= 1e-9 * np.linalg.norm(b)
        np.testing.assert_allclose(project_out(out, x), out, atol=1e-9)

    def test_basis_drops_dependent_columns(self, rng):
        x = random_complex(rng, 6, 2)
        basis = orthonormal_basis(np.hstack([x, x[:, :1] * 2.0]))
        assert basis.shape == (6, 2)


class TestQuantizePhase:
    @pytest.mark.parametrize("theta, n_q, expected", [
        (0.0, 8, 0.0),
        (0.40, 8, np.pi / 4),
        (-np.pi / 8 + 1e-6, 8, 0.0),
        (np.pi / 4, 4, 0.0),
        (2 * np.pi - 1e-9, 8, 0.0),
        (-np.pi / 8, 8, 0.0),
        (7.5 * np.pi / 4, 8, 0.0),
        (-np.pi / 2, 2, 0.0),
    ])
    def test_examples(self, theta, n_q, expected):
        assert quantize_phase(theta, n_q) == pytest.approx(expected, abs=1e-12)

    def test_wraparound_tie_goes_to_first_index(self):
        out = quantize_phase(np.array([-np.pi / 4, 7 * np.pi / 4, -np.pi / 4 - 1e-6]), 4)
        np.testing.assert_allclose(out, [0.0, 0.0, 3 * np.pi / 2], atol=1e-12)

    def test_scalar_and_array(self):
        assert isinstance(quantize_phase(1.0, 8), float)
        out = quantize_phase(np.array([[0.0, 0.4], [np.pi, -0.4]]), 8)
        assert out.shape == (2, 2)

    def test_rejects_small_grid(self):
        with pytest.raises(ValueError):
            quantize_phase(0.3, 1)

    @settings(max_examples=200, deadline=None)
    @given(theta=st.floats(min_value=-20.0, max_value=20.0),
           n_q=st.integers(min_value=2, max_value=64))
    def test_grid_membership_and_distance(self, theta, n_q):
        out = quantize_phase(theta, n_q)
        grid = 2 * np.pi * np.arange(n_q) / n_q
        assert np.min(np.abs(grid - out)) < 1e-12
        assert abs(np.angle(np.exp(1j * (out - theta)))) <= np.pi / n_q + 1e-9
