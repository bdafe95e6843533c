import numpy as np
import pytest
from numpy.testing import assert_allclose

from lyaplab.mat3 import (eig_general, eig_symmetric, expm, singular_values,
                          symmetrize_scaled)

SQRT_101 = np.sqrt(101.0)


def charpoly(m, lam):
    c2 = np.trace(m)
    c1 = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
          + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
          + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
    c0 = np.linalg.det(m)
    return ((lam - c2) * lam + c1) * lam - c0


# ---------------------------------------------------------------------------
# eig_general
# ---------------------------------------------------------------------------

def test_eig_general_diagonal():
    assert_allclose(eig_general(np.diag([-1.0, -2.0, -3.0])),
                    [-1, -2, -3], atol=1e-14)


def test_eig_general_triangular():
    m = np.array([[-1.0, 10.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, -3.0]])
    assert_allclose(eig_general(m), [-1, -2, -3], atol=1e-13)


def test_eig_general_complex_pair():
    # characteristic cubic solved by hand: (x+1)(x^2+5x+7)
    m = np.array([[-1.0, 0.0, 0.0], [0.0, -2.0, 1.0], [0.0, -1.0, -3.0]])
    expected = np.array([-1.0,
                         complex(-2.5, np.sqrt(3) / 2),
                         complex(-2.5, -np.sqrt(3) / 2)])
    assert_allclose(eig_general(m), expected, atol=1e-13)


def test_eig_general_residual_bound():
    rng = np.random.default_rng(11)
    for _ in range(300):
        m = rng.normal(size=(3, 3)) * 10 ** rng.uniform(-2, 2)
        bound = 1e-10 * max(1.0, np.abs(m).max() ** 3)
        for lam in eig_general(m):
            assert abs(charpoly(m, lam)) < bound


def test_eig_general_matches_numpy():
    rng = np.random.default_rng(12)
    for _ in range(500):
        m = rng.normal(size=(3, 3))
        mine = np.sort_complex(eig_general(m))
        ref = np.sort_complex(np.linalg.eigvals(m))
        assert_allclose(mine, ref, atol=1e-10)


def test_eig_general_trace_det():
    rng = np.random.default_rng(13)
    for _ in range(300):
        m = rng.normal(size=(3, 3)) * 3
        vals = eig_general(m)
        assert_allclose(vals.sum().real, np.trace(m), rtol=1e-10, atol=1e-12)
        assert abs(vals.sum().imag) < 1e-10
        assert_allclose(np.prod(vals).real, np.linalg.det(m),
                        rtol=1e-9, atol=1e-10)


def test_eig_general_sort_order():
    m = np.array([[0.0, 2.0, 0.0], [-2.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    vals = eig_general(m)        # {2i, -2i, 0} -> ties by descending imag
    assert vals[0].imag > vals[1].imag or vals[0].real > vals[1].real


# ---------------------------------------------------------------------------
# eig_symmetric
# ---------------------------------------------------------------------------

def test_eig_symmetric_diagonal_with_repeat():
    assert_allclose(eig_symmetric(np.diag([1.0, -2.0, -2.0])),
                    [1, -2, -2], atol=1e-14)


def test_eig_symmetric_closed_form_pair():
    m = np.array([[-1.0, 5.0, 0.0], [5.0, -2.0, 0.0], [0.0, 0.0, -3.0]])
    expected = [(SQRT_101 - 3) / 2, -3.0, -(SQRT_101 + 3) / 2]
    assert_allclose(eig_symmetric(m), expected, atol=1e-12)


def test_eig_symmetric_plain_diagonal():
    assert_allclose(eig_symmetric(np.diag([-1.0, -2.0, -3.0])),
                    [-1, -2, -3], atol=1e-14)


def test_eig_symmetric_invariants():
    rng = np.random.default_rng(21)
    for _ in range(300):
        m = rng.normal(size=(3, 3))
        m = m + m.T
        vals = eig_symmetric(m)
        assert vals[0] >= vals[1] >= vals[2]
        assert_allclose(vals.sum(), np.trace(m), rtol=1e-12, atol=1e-12)
        assert_allclose(np.prod(vals), np.linalg.det(m), rtol=1e-10, atol=1e-10)
        assert_allclose(vals, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-12)


def test_eig_symmetric_rejects_asymmetric():
    m = np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    with pytest.raises(ValueError):
        eig_symmetric(m)


def test_eig_symmetric_degenerate_fallback():
    # triple and double eigenvalues exercise the Jacobi path
    assert_allclose(eig_symmetric(np.eye(3) * 2.5), [2.5, 2.5, 2.5])
    q, _ = np.linalg.qr(np.random.default_rng(5).normal(size=(3, 3)))
    m = q @ np.diag([1.0, 1.0, -2.0]) @ q.T
    assert_allclose(eig_symmetric(0.5 * (m + m.T)), [1, 1, -2], atol=1e-10)


# ---------------------------------------------------------------------------
# symmetrize_scaled
# ---------------------------------------------------------------------------

def test_symmetrize_scaled_basic():
    rng = np.random.default_rng(30)
    m = rng.normal(size=(3, 3))
    s = symmetrize_scaled(m, 1.0)
    assert np.array_equal(s, s.T)
    assert_allclose(s, (m + m.T) / 2)


def test_symmetrize_scaled_rotation_block_cancels():
    a, b, c, t = 0.7, -1.2, 2.5, 3.0
    m = np.array([[a * t, 0, 0], [0, b * t, c * t], [0, -c * t, b * t]])
    assert_allclose(symmetrize_scaled(m, t), np.diag([a, b, b]), atol=1e-14)


def test_symmetrize_scaled_t_cancels_for_linear_growth():
    rng = np.random.default_rng(31)
    base = rng.normal(size=(3, 3))
    ref = symmetrize_scaled(base * 1.0, 1.0)
    for t in (0.5, 2.0, 7.0):
        assert_allclose(symmetrize_scaled(base * t, t), ref, rtol=1e-14)


def test_symmetrize_scaled_requires_positive_t():
    with pytest.raises(ValueError):
        symmetrize_scaled(np.eye(3), 0.0)
    with pytest.raises(ValueError):
        symmetrize_scaled(np.eye(3), -1.0)


# ---------------------------------------------------------------------------
# expm
# ---------------------------------------------------------------------------

def test_expm_zero_and_diagonal():
    assert_allclose(expm(np.zeros((3, 3))), np.eye(3), atol=1e-15)
    assert_allclose(expm(np.diag([1.0, -2.0, 0.3])),
                    np.diag(np.exp([1.0, -2.0, 0.3])), rtol=1e-13)


def test_expm_triangular_closed_form():
    # exp of [[a, b], [0, d]] has top-right entry b (e^a - e^d) / (a - d)
    m = np.array([[-1.0, 10.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, -3.0]])
    e = expm(m)
    expected01 = 10.0 * (np.exp(-1) - np.exp(-2))
    assert_allclose(e[0, 1], expected01, rtol=1e-12)
    assert_allclose(expected01, 2.325442, atol=5e-7)
    assert_allclose(np.diag(e), np.exp([-1.0, -2.0, -3.0]), rtol=1e-12)


def test_expm_inverse_identity():
    rng = np.random.default_rng(40)
    for _ in range(200):
        m = rng.normal(size=(3, 3)) * rng.uniform(0.1, 3.3)
        assert_allclose(expm(m) @ expm(-m), np.eye(3), atol=1e-10)


def test_expm_matches_scipy():
    import scipy.linalg as sla
    rng = np.random.default_rng(41)
    for _ in range(300):
        m = rng.normal(size=(3, 3)) * rng.uniform(0.1, 3.3)
        # 2.5e-12 is the conditioning floor for non-normal inputs of norm ~10
        assert_allclose(expm(m), sla.expm(m),
                        rtol=0, atol=2.5e-12 * max(1, np.abs(sla.expm(m)).max()))


def test_expm_splitting_fails_for_non_normal():
    # exp(m + m^T) differs from exp(m) exp(m^T) unless m is normal
    m = np.array([[-1.0, 10.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, -3.0]])
    lhs = expm(m + m.T)
    rhs = expm(m) @ expm(m.T)
    ratio = (np.linalg.eigvalsh(0.5 * (rhs + rhs.T)).max()
             / np.linalg.eigvalsh(0.5 * (lhs + lhs.T)).max())
    assert ratio > 1.01 or 1.0 / ratio > 1.01
    # and agrees when m is normal (here: symmetric)
    s = np.array([[1.0, 0.3, 0.0], [0.3, -0.5, 0.2], [0.0, 0.2, 0.1]])
    assert_allclose(expm(s + s.T), expm(s) @ expm(s.T), atol=1e-10)


# ---------------------------------------------------------------------------
# singular_values
# ---------------------------------------------------------------------------

def test_singular_values_identity_and_diagonal():
    assert_allclose(singular_values(np.eye(3)), [1, 1, 1], atol=1e-14)
    assert_allclose(singular_values(np.diag([3.0, -2.0, 1.0])), [3, 2, 1],
                    atol=1e-13)


def test_singular_values_of_triangular_exponential():
    m = np.array([[-1.0, 10.0, 0.0], [0.0, -2.0, 0.0], [0.0, 0.0, -3.0]])
    sv = singular_values(expm(m))
    # closed-form singular values of the 2x2 triangular block
    g = np.array([[np.exp(-1), 10 * (np.exp(-1) - np.exp(-2))],
                  [0.0, np.exp(-2)]])
    gram = g.T @ g
    tr, det = np.trace(gram), np.linalg.det(gram)
    top = np.sqrt((tr + np.sqrt(tr * tr - 4 * det)) / 2)
    assert_allclose(sv[0], top, rtol=1e-12)
    assert_allclose(top, 2.3581526, atol=1e-7)


def test_singular_values_product_is_abs_det():
    rng = np.random.default_rng(50)
    for _ in range(300):
        m = rng.normal(size=(3, 3)) * 10 ** rng.uniform(-1, 1)
        sv = singular_values(m)
        assert sv[0] >= sv[1] >= sv[2] >= 0
        assert_allclose(np.prod(sv), abs(np.linalg.det(m)), rtol=1e-10)
