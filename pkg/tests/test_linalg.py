import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pontgap.errors import (
    DimensionMismatchError,
    NonHermitianError,
    SingularMatrixError,
    ValidationError,
)
from pontgap.linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_complex_matrix,
    clustering_threshold,
    complex_eigen,
    frob,
    hermitian_eigen,
    null_space,
    orthonormal_columns,
    rank_tol,
    solve,
)

dims = st.integers(min_value=1, max_value=7)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _random_complex(rng, rows, cols):
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


# ---------------------------------------------------------------------------
# Tolerance


@pytest.mark.parametrize("bad", [0.0, 1.0, -1e-9, 2.0])
def test_tolerance_rejects_out_of_range(bad):
    with pytest.raises(ValidationError):
        Tolerance(rel=bad)
    with pytest.raises(ValidationError):
        Tolerance(abs=bad)


def test_singular_cutoff_takes_max_of_floor_and_relative():
    tol = Tolerance(rel=1e-9, abs=1e-12)
    assert tol.singular_cutoff(1e6) == 1e6 * 1e-9
    assert tol.singular_cutoff(0.0) == 1e-12


# ---------------------------------------------------------------------------
# coercion


def test_as_complex_matrix_shape_checks():
    with pytest.raises(ValidationError):
        as_complex_matrix(np.zeros(3))
    with pytest.raises(DimensionMismatchError):
        as_complex_matrix(np.zeros((2, 3)), square=True)
    with pytest.raises(ValidationError):
        as_complex_matrix(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValidationError):
        as_complex_matrix(np.array([[1.0, np.inf], [0.0, 1.0]]))


def test_as_complex_matrix_accepts_noncontiguous_views():
    big = np.arange(36, dtype=float).reshape(6, 6) + 0j
    view = big[::2, ::2].T
    out = as_complex_matrix(view)
    assert np.array_equal(out, view)


# ---------------------------------------------------------------------------
# hermitian_eigen


@given(dims, seeds)
def test_hermitian_eigen_matches_eigvalsh(d, seed):
    rng = np.random.default_rng(seed)
    g = _random_complex(rng, d, d)
    h = 0.5 * (g + g.conj().T)
    w, v = hermitian_eigen(h)
    assert np.allclose(w, np.linalg.eigvalsh(h))
    assert np.allclose(v.conj().T @ v, np.eye(d), atol=1e-12)
    assert np.allclose(h @ v, v @ np.diag(w), atol=1e-10 * max(1.0, frob(h)))


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_eigen_tolerates_roundoff_asymmetry():
    h = np.array([[2.0, 1.0 + 1e-14j], [1.0 - 0.9e-14j, 3.0]])
    w, _ = hermitian_eigen(h)
    assert np.all(np.isreal(w))


# ---------------------------------------------------------------------------
# complex_eigen


def test_complex_eigen_exact_diagonal():
    got = complex_eigen(np.diag([2.0, -1.0, 2.0]).astype(complex))
    assert got == [(-1.0 + 0j, 1), (2.0 + 0j, 2)]


def test_complex_eigen_merges_defective_cluster():
    # Jordan block: the two computed eigenvalues split by ~sqrt(eps)
    # around 0 and must come back as one cluster of multiplicity 2
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    got = complex_eigen(m)
    assert len(got) == 1
    value, mult = got[0]
    assert mult == 2
    assert abs(value) <= clustering_threshold(m)


def test_complex_eigen_merges_near_duplicates():
    m = np.diag([1.0, 1.0 + 1e-9, 5.0]).astype(complex)
    got = complex_eigen(m)
    assert [mult for _, mult in got] == [2, 1]


@given(dims, seeds)
def test_complex_eigen_multiplicities_sum_to_dimension(d, seed):
    rng = np.random.default_rng(seed)
    m = _random_complex(rng, d, d)
    got = complex_eigen(m)
    assert sum(mult for _, mult in got) == d
    values = [v for v, _ in got]
    assert values == sorted(values, key=lambda z: (z.real, z.imag))
    # reported values are pairwise separated
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            assert abs(values[i] - values[j]) > clustering_threshold(m)


# ---------------------------------------------------------------------------
# rank / null space / solve


@given(dims, dims, seeds)
def test_rank_and_null_space_are_consistent(rows, cols, seed):
    rng = np.random.default_rng(seed)
    r = rng.integers(0, min(rows, cols) + 1)
    m = _random_complex(rng, rows, r) @ _random_complex(rng, r, cols) if r else (
        np.zeros((rows, cols), dtype=complex)
    )
    rank = rank_tol(m)
    assert rank == r
    kernel = null_space(m)
    assert kernel.shape == (cols, cols - rank)
    if kernel.size:
        assert np.allclose(m @ kernel, 0.0, atol=1e-8 * max(1.0, frob(m)))
        assert np.allclose(
            kernel.conj().T @ kernel, np.eye(cols - rank), atol=1e-12
        )


def test_rank_of_zero_matrix():
    assert rank_tol(np.zeros((3, 3))) == 0
    assert null_space(np.zeros((3, 2))).shape == (2, 2)


@given(dims, seeds)
def test_solve_residual(d, seed):
    rng = np.random.default_rng(seed)
    m = _random_complex(rng, d, d) + 3.0 * np.eye(d)
    b = _random_complex(rng, d, 2)
    x = solve(m, b)
    assert np.allclose(m @ x, b, atol=1e-9 * max(1.0, frob(m)))


def test_solve_raises_on_singular_with_diagnostic():
    m = np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
    with pytest.raises(SingularMatrixError) as info:
        solve(m, np.eye(2))
    assert info.value.smallest_singular_value < 1e-12


def test_solve_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        solve(np.eye(2), np.zeros((3, 1)))


@given(dims, dims, seeds)
def test_orthonormal_columns_spans_the_range(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = _random_complex(rng, rows, cols)
    q = orthonormal_columns(m)
    assert q.shape[1] == rank_tol(m)
    assert np.allclose(q.conj().T @ q, np.eye(q.shape[1]), atol=1e-12)
    # original columns lie in the span of q
    assert np.allclose(q @ (q.conj().T @ m), m, atol=1e-9 * max(1.0, frob(m)))
