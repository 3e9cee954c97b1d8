import math

import numpy as np
import pytest

from kernstab import (
    Family,
    KernelSpec,
    MatrixKind,
    QuadratureConfig,
    QuadratureError,
    SingularMatrixError,
    antisymmetric_part,
    closed_form_conv_exp,
    conv_gram,
    conv_value,
    equispaced,
    gram,
    halton,
    interpolate,
    lambda_min,
    shifted_gram,
    symmetric_part,
    write_matrix_csv,
)
from kernstab.geometry import PointSet

BASIC = KernelSpec(Family.MATERN_BASIC, dim=1)
LINEAR = KernelSpec(Family.MATERN_LINEAR, dim=1)


def _interval_set(values):
    pts = np.asarray(values, dtype=float)[:, None]
    return PointSet(pts, np.array([[min(values), max(values)]]))


def test_gram_single_point():
    X = PointSet(np.array([[0.0]]), np.array([[0.0, 1.0]]))
    np.testing.assert_array_equal(gram(BASIC, X).data, [[1.0]])


def test_gram_two_points():
    X = equispaced(2, 0, 1)
    A = gram(BASIC, X)
    e = math.exp(-1.0)
    np.testing.assert_allclose(A.data, [[1.0, e], [e, 1.0]], rtol=1e-15)
    # 2x2 eigenvalues are 1 -/+ e^(-1)
    assert lambda_min(A) == pytest.approx(1.0 - e, rel=1e-14)
    assert A.kind is MatrixKind.SYMMETRIC


def test_gram_reference_eigenvalue():
    X = equispaced(10, 0, 1)
    assert lambda_min(gram(BASIC, X)) == pytest.approx(5.68706355670114e-2, rel=1e-8)


def test_gram_exactly_symmetric():
    X = halton(40, 3)
    A = gram(KernelSpec(Family.MATERN_QUADRATIC, dim=3), X).data
    np.testing.assert_array_equal(A, A.T)
    assert np.all(np.diag(A) == 3.0)


def test_gram_dimension_mismatch():
    with pytest.raises(ValueError):
        gram(KernelSpec(Family.MATERN_BASIC, dim=2), equispaced(4, 0, 1))


def test_shifted_gram_zero_shift_equals_gram():
    X = halton(30, 2)
    spec = KernelSpec(Family.MATERN_LINEAR, dim=2)
    np.testing.assert_array_equal(shifted_gram(spec, X, [0.0, 0.0]).data, gram(spec, X).data)


def test_shifted_gram_values():
    X = equispaced(2, 0, 1)
    B = shifted_gram(BASIC, X, [0.1]).data
    expected = np.exp(-np.array([[0.1, 0.9], [1.1, 0.1]]))
    np.testing.assert_allclose(B, expected, rtol=1e-15)


def test_shifted_gram_dimension_mismatch():
    with pytest.raises(ValueError):
        shifted_gram(BASIC, equispaced(3, 0, 1), [0.1, 0.2])


def test_parts_of_symmetric_matrix():
    A = np.array([[2.0, 1.0], [1.0, 3.0]])
    np.testing.assert_array_equal(symmetric_part(A), A)
    np.testing.assert_array_equal(antisymmetric_part(A), np.zeros((2, 2)))


def test_parts_of_nilpotent_matrix():
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    np.testing.assert_array_equal(symmetric_part(A), [[0.0, 0.5], [0.5, 0.0]])
    np.testing.assert_array_equal(antisymmetric_part(A), [[0.0, 0.5], [-0.5, 0.0]])


def test_parts_require_square():
    with pytest.raises(ValueError):
        symmetric_part(np.ones((2, 3)))


def test_parts_decompose_and_cancel():
    # the antisymmetric part carries no quadratic form mass and the
    # symmetric-part form is bounded by ||A a|| ||a||
    rng = np.random.default_rng(77)
    for _ in range(1000):
        n = int(rng.integers(2, 13))
        A = rng.uniform(-1, 1, (n, n))
        alpha = rng.uniform(-1, 1, n)
        np.testing.assert_allclose(
            symmetric_part(A) + antisymmetric_part(A), A, atol=1e-15
        )
        assert abs(alpha @ antisymmetric_part(A) @ alpha) <= 1e-12
        assert abs(alpha @ symmetric_part(A) @ alpha) <= (
            np.linalg.norm(A @ alpha) * np.linalg.norm(alpha) + 1e-12
        )


def test_conv_gram_center_entry():
    X = _interval_set([0.0, 0.5, 1.0])
    K = conv_gram(BASIC, X)
    assert K.data[1, 1] == pytest.approx(1.0 - math.exp(-1.0), abs=1e-13)
    assert K.kind is MatrixKind.CONV


def test_conv_gram_matches_closed_form_entrywise():
    X = equispaced(10, 0, 1)
    K = conv_gram(BASIC, X).data
    x = X.points[:, 0]
    for i in range(10):
        for j in range(10):
            assert abs(K[i, j] - closed_form_conv_exp(x[i], x[j], (0, 1))) <= 1e-12


def test_conv_gram_matches_conv_value():
    X = equispaced(6, 0, 1)
    K = conv_gram(LINEAR, X).data
    x = X.points[:, 0]
    for i in range(6):
        for j in range(i, 6):
            assert K[i, j] == pytest.approx(conv_value(LINEAR, x[i], x[j], (0, 1)), abs=1e-13)


def test_conv_gram_reference_eigenvalues():
    X = equispaced(10, 0, 1)
    assert lambda_min(conv_gram(BASIC, X)) == pytest.approx(1.1886014854231e-4, rel=1e-3)
    assert lambda_min(conv_gram(LINEAR, X)) == pytest.approx(9.39015888450254e-10, rel=1e-2)


def test_conv_gram_positive_semidefinite_forms():
    X = equispaced(25, 0, 1)
    K = conv_gram(LINEAR, X).data
    rng = np.random.default_rng(13)
    floor = len(X) * np.finfo(float).eps * np.max(np.abs(K))
    for _ in range(200):
        alpha = rng.uniform(-1, 1, len(X))
        assert alpha @ K @ alpha >= -floor * (alpha @ alpha)


def test_conv_gram_exactly_symmetric():
    K = conv_gram(LINEAR, equispaced(17, 0, 1)).data
    np.testing.assert_array_equal(K, K.T)


def test_conv_gram_reports_quadrature_failure():
    coarse = QuadratureConfig(order=2, panels_per_unit=1.0)
    with pytest.raises(QuadratureError) as info:
        conv_gram(BASIC, equispaced(3, 0, 1), coarse)
    assert info.value.achieved is not None
    assert info.value.achieved > info.value.target


def test_conv_gram_is_one_dimensional_only():
    with pytest.raises(ValueError):
        conv_gram(KernelSpec(Family.MATERN_BASIC, dim=2), halton(5, 2))


def test_interpolate_unit_and_zero():
    X = equispaced(6, 0, 1)
    A = gram(BASIC, X).data
    for j in (0, 3):
        alpha = interpolate(BASIC, X, A[:, j])
        expected = np.zeros(6)
        expected[j] = 1.0
        np.testing.assert_allclose(alpha, expected, atol=1e-12)
    np.testing.assert_array_equal(interpolate(BASIC, X, np.zeros(6)), np.zeros(6))


def test_interpolate_two_point_solve():
    X = equispaced(2, 0, 1)
    alpha = interpolate(BASIC, X, [1.0, 1.0])
    expected = 1.0 / (1.0 + math.exp(-1.0))
    np.testing.assert_allclose(alpha, [expected, expected], rtol=1e-14)


def test_interpolate_residual_small():
    X = halton(40, 2)
    spec = KernelSpec(Family.MATERN_LINEAR, dim=2)
    rng = np.random.default_rng(3)
    f = rng.uniform(-1, 1, 40)
    alpha = interpolate(spec, X, f)
    residual = np.linalg.norm(gram(spec, X).data @ alpha - f)
    assert residual <= 1e-10 * np.linalg.norm(f)


def test_interpolate_singular_reports_lambda_min():
    # points one ulp-cluster apart: the kernel matrix collapses to rank one
    X = _interval_set([0.0, 1e-17])
    with pytest.raises(SingularMatrixError) as info:
        interpolate(BASIC, X, [1.0, 1.0])
    assert info.value.lambda_min is not None
    assert info.value.lambda_min <= 1e-12


def test_matrix_csv_round_trip(tmp_path):
    X = equispaced(5, 0, 1)
    A = gram(LINEAR, X)
    path = tmp_path / "matrix.csv"
    write_matrix_csv(A, path)
    back = np.array(
        [[float(v) for v in line.split(",")] for line in path.read_text().splitlines()]
    )
    np.testing.assert_array_equal(back, A.data)
