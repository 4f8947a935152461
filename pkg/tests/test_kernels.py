import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kpca_lab.kernels import (
    KernelSpec,
    center_cross,
    center_gram,
    eval_kernel,
    kernel_matrix,
)


def test_spec_constructors_validate():
    with pytest.raises(ValueError):
        KernelSpec.polynomial(0)
    with pytest.raises(ValueError):
        KernelSpec.polynomial(2, offset=-1.0)
    with pytest.raises(ValueError):
        KernelSpec.gaussian(0.0)
    with pytest.raises(ValueError):
        KernelSpec.gaussian(-2.0)


def test_gaussian_same_point_is_one():
    x = np.array([0.3, -1.2, 4.0])
    assert eval_kernel(KernelSpec.gaussian(0.7), x, x) == 1.0


def test_polynomial_degree_one_is_dot_product():
    x = np.array([1.0, 2.0, 3.0])
    y = np.array([-1.0, 0.5, 2.0])
    assert eval_kernel(KernelSpec.polynomial(1, 0.0), x, y) == x @ y
    assert eval_kernel(KernelSpec.linear(), x, y) == x @ y


def test_gaussian_hand_value():
    # sigma=1, |x-y| = 2 -> exp(-4/2) = exp(-2)
    v = eval_kernel(KernelSpec.gaussian(1.0), np.array([0.0]), np.array([2.0]))
    assert v == pytest.approx(0.1353352832366127, rel=1e-12)


def test_eval_kernel_dimension_mismatch():
    with pytest.raises(ValueError):
        eval_kernel(KernelSpec.linear(), np.array([1.0]), np.array([1.0, 2.0]))


def test_kernel_matrix_single_row():
    x = np.array([[1.0, 2.0]])
    for spec in (KernelSpec.linear(), KernelSpec.polynomial(3, 1.0),
                 KernelSpec.gaussian(2.0)):
        k = kernel_matrix(spec, x, x)
        assert k.shape == (1, 1)
        assert k[0, 0] == pytest.approx(eval_kernel(spec, x[0], x[0]))


def test_kernel_matrix_matches_double_loop():
    rng = np.random.default_rng(10)
    a = rng.standard_normal((6, 3))
    b = rng.standard_normal((4, 3))
    for spec in (KernelSpec.linear(), KernelSpec.polynomial(2, 0.5),
                 KernelSpec.gaussian(1.3)):
        k = kernel_matrix(spec, a, b)
        for i in range(6):
            for j in range(4):
                assert k[i, j] == pytest.approx(eval_kernel(spec, a[i], b[j]),
                                                rel=1e-12, abs=1e-12)


def test_gaussian_identical_rows_all_ones():
    x = np.array([[1.0, 1.0], [1.0, 1.0]])
    k = kernel_matrix(KernelSpec.gaussian(0.5), x, x)
    assert np.array_equal(k, np.ones((2, 2)))


def test_gaussian_self_matrix_unit_diagonal_exact():
    rng = np.random.default_rng(11)
    x = rng.standard_normal((9, 4))
    k = kernel_matrix(KernelSpec.gaussian(0.9), x, x)
    assert np.array_equal(np.diag(k), np.ones(9))
    assert np.array_equal(k, k.T)


def test_linear_self_matrix_exactly_symmetric():
    rng = np.random.default_rng(12)
    x = rng.standard_normal((8, 5))
    k = kernel_matrix(KernelSpec.linear(), x, x)
    assert np.array_equal(k, k.T)
    assert np.allclose(k, x @ x.T, atol=1e-12)


def test_kernel_matrix_dimension_mismatch():
    with pytest.raises(ValueError):
        kernel_matrix(KernelSpec.linear(), np.zeros((2, 3)), np.zeros((2, 4)))


def test_center_gram_all_ones_to_zero():
    k = np.ones((4, 4))
    assert np.allclose(center_gram(k), np.zeros((4, 4)), atol=1e-12)


def test_center_gram_no_op_on_centered_data():
    rng = np.random.default_rng(13)
    x = rng.standard_normal((10, 3))
    x = x - x.mean(axis=0)
    k = kernel_matrix(KernelSpec.linear(), x, x)
    assert np.abs(center_gram(k) - k).max() <= 1e-9


def test_center_gram_zero_row_sums():
    rng = np.random.default_rng(14)
    a = rng.standard_normal((5, 5))
    k = (a + a.T) / 2.0
    kc = center_gram(k)
    assert np.abs(kc.sum(axis=0)).max() <= 1e-9
    assert np.abs(kc.sum(axis=1)).max() <= 1e-9
    # symmetric up to rounding of the two subtracted mean terms
    assert np.allclose(kc, kc.T, atol=1e-12)


def test_center_gram_rejects_non_square():
    with pytest.raises(ValueError):
        center_gram(np.zeros((2, 3)))


def test_center_cross_of_training_row_matches_training_centering():
    rng = np.random.default_rng(15)
    x = rng.standard_normal((7, 3))
    k = kernel_matrix(KernelSpec.gaussian(1.1), x, x)
    kc = center_gram(k)
    k_test = kernel_matrix(KernelSpec.gaussian(1.1), x[2:3], x)
    assert np.allclose(center_cross(k_test, k), kc[2:3], atol=1e-12)


def test_center_cross_identical_points_zero():
    x = np.ones((5, 2))
    k = kernel_matrix(KernelSpec.gaussian(1.0), x, x)
    k_test = kernel_matrix(KernelSpec.gaussian(1.0), np.ones((3, 2)), x)
    assert np.allclose(center_cross(k_test, k), np.zeros((3, 5)), atol=1e-12)


def test_center_cross_matches_brute_force():
    rng = np.random.default_rng(16)
    x = rng.standard_normal((6, 2))
    q = rng.standard_normal((4, 2))
    spec = KernelSpec.gaussian(0.8)
    k = kernel_matrix(spec, x, x)
    k_test = kernel_matrix(spec, q, x)
    n = 6
    expected = np.empty_like(k_test)
    for t in range(4):
        for i in range(n):
            expected[t, i] = (
                k_test[t, i]
                - sum(k[j, i] for j in range(n)) / n
                - sum(k_test[t, j] for j in range(n)) / n
                + sum(k[j, l] for j in range(n) for l in range(n)) / n**2
            )
    assert np.allclose(center_cross(k_test, k), expected, atol=1e-12)


def test_center_cross_shape_mismatch():
    with pytest.raises(ValueError):
        center_cross(np.zeros((3, 4)), np.zeros((5, 5)))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000),
       st.integers(min_value=2, max_value=12))
def test_center_gram_idempotent_and_psd(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 3))
    k = kernel_matrix(KernelSpec.gaussian(1.0), x, x)  # PSD by construction
    kc = center_gram(k)
    assert np.abs(center_gram(kc) - kc).max() <= 1e-9
    assert np.linalg.eigvalsh((kc + kc.T) / 2.0).min() >= -1e-8
