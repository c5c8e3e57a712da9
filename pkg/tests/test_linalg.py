import numpy as np
import pytest

from ppbasis import linalg
from ppbasis.errors import InvalidInnerProduct, InvalidInput


def test_operator_norm_matches_singular_value():
    rng = linalg.rng_from_seed(3)
    for _ in range(10):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        s = np.linalg.svd(a, compute_uv=False)
        assert abs(linalg.operator_norm(a) - s[0]) < 1e-12


def test_rank_and_nullspace():
    # rank-2 outer product construction, nullspace has dim 3
    rng = linalg.rng_from_seed(7)
    u = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    v = rng.standard_normal((2, 5)) + 1j * rng.standard_normal((2, 5))
    a = u @ v
    assert linalg.rank(a) == 2
    ns = linalg.nullspace(a)
    assert ns.shape == (5, 3)
    assert np.linalg.norm(a @ ns) < 1e-10
    # columns come back orthonormal
    assert np.linalg.norm(ns.conj().T @ ns - np.eye(3)) < 1e-10


def test_nullspace_of_invertible_is_empty():
    ns = linalg.nullspace(np.eye(4))
    assert ns.shape == (4, 0)


def test_orthonormal_columns_spans_range():
    rng = linalg.rng_from_seed(11)
    a = rng.standard_normal((6, 4)) + 1j * rng.standard_normal((6, 4))
    a[:, 3] = a[:, 0] + a[:, 1]  # force a dependency
    q = linalg.orthonormal_columns(a)
    assert q.shape == (6, 3)
    assert np.linalg.norm(q.conj().T @ q - np.eye(3)) < 1e-10
    # original columns lie in the span of q
    proj = q @ q.conj().T
    assert np.linalg.norm(proj @ a - a) < 1e-8


def test_gram_schmidt_standard_inner():
    rng = linalg.rng_from_seed(2)
    vecs = [rng.standard_normal(5) + 1j * rng.standard_normal(5) for _ in range(3)]
    vecs.append(vecs[0] + vecs[1])  # dependent, should be dropped
    out = linalg.gram_schmidt(vecs)
    assert len(out) == 3
    for i, u in enumerate(out):
        for j, w in enumerate(out):
            want = 1.0 if i == j else 0.0
            assert abs(np.vdot(w, u) - want) < 1e-10


def test_gram_schmidt_weighted_inner():
    # inner product from a positive diagonal weight
    w = np.array([1.0, 2.0, 0.5])
    inner = lambda x, y: complex(np.sum(w * x * np.conj(y)))
    out = linalg.gram_schmidt([np.array([1.0, 1, 0]), np.array([0.0, 1, 1])], inner=inner)
    assert len(out) == 2
    assert abs(inner(out[0], out[0]) - 1) < 1e-12
    assert abs(inner(out[1], out[0])) < 1e-12


def test_gram_schmidt_rejects_indefinite_form():
    inner = lambda x, y: complex(x[0] * np.conj(y[0]) - x[1] * np.conj(y[1]))
    with pytest.raises(InvalidInnerProduct):
        linalg.gram_schmidt([np.array([0.0, 1.0])], inner=inner)


def test_cluster_values_groups_by_gap():
    vals = [1.0, 1.0 + 1e-9, 2.0, 2.0 - 1e-9, 5.0]
    groups = linalg.cluster_values(vals)
    assert len(groups) == 3
    means = [m for m, _ in groups]
    assert abs(means[0] - 1.0) < 1e-8
    assert abs(means[1] - 2.0) < 1e-8
    assert abs(means[2] - 5.0) < 1e-8
    sizes = sorted(len(idx) for _, idx in groups)
    assert sizes == [1, 2, 2]


def test_cluster_values_empty():
    assert linalg.cluster_values([]) == []


def test_random_unitary_is_unitary_and_deterministic():
    for seed in range(5):
        u = linalg.random_unitary(4, linalg.rng_from_seed(seed))
        assert np.linalg.norm(u @ u.conj().T - np.eye(4)) < 1e-12
        v = linalg.random_unitary(4, linalg.rng_from_seed(seed))
        assert np.array_equal(u, v)


def test_random_hermitian_is_hermitian():
    h = linalg.random_hermitian(5, linalg.rng_from_seed(0))
    assert np.linalg.norm(h - h.conj().T) == 0.0


def test_block_diag_shapes_and_content():
    a = np.ones((2, 2))
    b = 2 * np.ones((1, 3))
    out = linalg.block_diag([a, b])
    assert out.shape == (3, 5)
    assert np.array_equal(out[:2, :2], a)
    assert np.array_equal(out[2:, 2:], b)
    assert np.linalg.norm(out[:2, 2:]) == 0.0
    assert linalg.block_diag([]).shape == (0, 0)


def test_check_square_rejects_rectangular():
    with pytest.raises(InvalidInput):
        linalg.check_square(np.zeros((2, 3)))


def test_projection_predicates():
    p = np.diag([1.0, 1.0, 0.0])
    assert linalg.is_projection_matrix(p)
    r1, r2 = linalg.projection_residuals(p)
    assert r1 == 0.0 and r2 == 0.0
    # a non-idempotent hermitian matrix fails
    assert not linalg.is_projection_matrix(np.diag([0.5, 1.0, 0.0]))
    # a non-selfadjoint idempotent fails
    q = np.array([[1.0, 1.0], [0.0, 0.0]])
    assert not linalg.is_projection_matrix(q)
