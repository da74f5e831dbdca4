import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import helpers
from pontgap.errors import (
    DimensionMismatchError,
    NonHermitianError,
    NumericalDefectError,
    SingularMatrixError,
    ValidationError,
)
from pontgap.indefinite import (
    Inertia,
    Subspace,
    inertia_of_hermitian,
    intersect_subspaces,
    isotropic_part,
    j_complement,
    oblique_projection,
    signature,
    subspace_inertia,
    sum_subspaces,
    validate_space,
)

dims = st.integers(min_value=1, max_value=6)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

J2 = np.diag([1.0, -1.0]).astype(complex)


def test_inertia_dim_and_sig():
    inertia = Inertia(plus=3, minus=1, zero=2)
    assert inertia.dim == 6
    assert inertia.sig == 2


def test_inertia_rejects_negative_counts():
    with pytest.raises(ValidationError):
        Inertia(plus=-1, minus=0, zero=0)


def test_validate_space_counts_negative_squares():
    space = validate_space(J2)
    assert (space.kappa_plus, space.kappa_minus) == (1, 1)
    assert space.kappa == 1
    hilbert = validate_space(np.eye(3))
    assert (hilbert.kappa_plus, hilbert.kappa_minus) == (3, 0)


def test_validate_space_rejects_degenerate_gram():
    with pytest.raises(SingularMatrixError):
        validate_space(np.diag([1.0, 0.0]))


def test_validate_space_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        validate_space(np.array([[1.0, 1.0], [0.0, -1.0]]))


def test_inner_product_hand_value():
    # [x, x] = |2|^2 - |i|^2 = 3 for x = (2, i) against diag(1, -1)
    space = validate_space(J2)
    x = np.array([2.0, 1j])
    assert space.inner(x, x) == pytest.approx(3.0)


@given(dims, seeds)
def test_inner_product_is_hermitian_sesquilinear(d, seed):
    space = helpers.make_space(d, d // 2, seed)
    rng = np.random.default_rng(seed + 1)
    x = rng.normal(size=d) + 1j * rng.normal(size=d)
    y = rng.normal(size=d) + 1j * rng.normal(size=d)
    assert space.inner(x, y) == pytest.approx(np.conj(space.inner(y, x)))
    assert space.inner(2j * x, y) == pytest.approx(2j * space.inner(x, y))


def test_same_space():
    space = validate_space(J2)
    assert space.same_space(validate_space(J2))
    assert not space.same_space(validate_space(np.eye(2)))
    assert not space.same_space(validate_space(np.eye(3)))


# ---------------------------------------------------------------------------
# Subspace


def test_subspace_requires_orthonormal_basis():
    with pytest.raises(ValidationError):
        Subspace(2, np.array([[1.0], [1.0]], dtype=complex))


def test_from_columns_orthonormalizes():
    sub = Subspace.from_columns(2, np.array([[2.0, 2.0], [0.0, 0.0]], dtype=complex))
    assert sub.dim == 1
    assert sub.contains(np.array([1.0, 0.0]))
    assert not sub.contains(np.array([0.0, 1.0]))


def test_zero_and_full():
    assert Subspace.zero(3).dim == 0
    assert Subspace.full(3).dim == 3
    assert np.allclose(Subspace.full(3).projector(), np.eye(3))


@given(dims, seeds)
def test_projector_is_hermitian_idempotent(d, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, d + 1))
    sub = Subspace(d, helpers.random_orthonormal(rng, d, k))
    p = sub.projector()
    assert np.allclose(p, p.conj().T, atol=1e-12)
    assert np.allclose(p @ p, p, atol=1e-12)
    assert np.allclose(np.trace(p).real, k)


# ---------------------------------------------------------------------------
# inertia of subspaces


def test_inertia_of_hermitian_with_zero_band():
    got = inertia_of_hermitian(np.diag([2.0, -3.0, 1e-12]), zero_band=1e-8)
    assert got == Inertia(plus=1, minus=1, zero=1)


def test_subspace_inertia_coordinate_spans():
    space = validate_space(J2)
    e1 = Subspace.from_columns(2, np.array([[1.0], [0.0]], dtype=complex))
    e2 = Subspace.from_columns(2, np.array([[0.0], [1.0]], dtype=complex))
    assert subspace_inertia(space, e1) == Inertia(1, 0, 0)
    assert subspace_inertia(space, e2) == Inertia(0, 1, 0)
    assert subspace_inertia(space, Subspace.full(2)) == Inertia(1, 1, 0)
    assert signature(space, e1) == 1
    assert signature(space, e2) == -1


def test_neutral_vector_counts_as_zero():
    space = validate_space(J2)
    neutral = Subspace.from_columns(
        2, np.array([[1.0], [1.0]], dtype=complex) / np.sqrt(2)
    )
    assert subspace_inertia(space, neutral) == Inertia(0, 0, 1)
    iso = isotropic_part(space, neutral)
    assert iso.dim == 1
    assert iso.contains(np.array([1.0, 1.0]) / np.sqrt(2))


def test_isotropic_part_of_definite_subspace_is_zero():
    space = validate_space(J2)
    e1 = Subspace.from_columns(2, np.array([[1.0], [0.0]], dtype=complex))
    assert isotropic_part(space, e1).dim == 0
    # the whole space is nondegenerate since J is invertible
    assert isotropic_part(space, Subspace.full(2)).dim == 0


@given(dims, seeds)
def test_subspace_inertia_dim_consistency(d, seed):
    space = helpers.make_space(d, min(1, d - 1) if d > 1 else 0, seed)
    rng = np.random.default_rng(seed + 3)
    k = int(rng.integers(0, d + 1))
    sub = Subspace(d, helpers.random_orthonormal(rng, d, k))
    inertia = subspace_inertia(space, sub)
    assert inertia.dim == k
    assert isotropic_part(space, sub).dim == inertia.zero


def test_subspace_inertia_checks_ambient_dim():
    space = validate_space(J2)
    with pytest.raises(DimensionMismatchError):
        subspace_inertia(space, Subspace.full(3))


# ---------------------------------------------------------------------------
# lattice operations


@given(dims, seeds)
def test_sum_and_intersection_dimension_formula(d, seed):
    rng = np.random.default_rng(seed)
    shared = int(rng.integers(0, d + 1))
    extra1 = int(rng.integers(0, d - shared + 1))
    extra2 = int(rng.integers(0, d - shared - extra1 + 1))
    basis = helpers.random_orthonormal(rng, d, shared + extra1 + extra2)
    s1 = Subspace(d, basis[:, : shared + extra1])
    s2 = Subspace(d, np.hstack([basis[:, :shared], basis[:, shared + extra1 :]]))
    both = intersect_subspaces(s1, s2)
    union = sum_subspaces(s1, s2)
    assert both.dim == shared
    assert union.dim == shared + extra1 + extra2
    assert union.dim + both.dim == s1.dim + s2.dim


def test_intersection_is_contained_in_both():
    rng = np.random.default_rng(17)
    basis = helpers.random_orthonormal(rng, 4, 3)
    s1 = Subspace(4, basis[:, :2])
    s2 = Subspace(4, basis[:, 1:])
    got = intersect_subspaces(s1, s2)
    assert got.dim == 1
    for col in got.basis.T:
        assert s1.contains(col)
        assert s2.contains(col)


@given(dims, seeds)
def test_j_complement_dimension_and_orthogonality(d, seed):
    space = helpers.make_space(d, d // 2, seed)
    rng = np.random.default_rng(seed + 7)
    k = int(rng.integers(0, d + 1))
    sub = Subspace(d, helpers.random_orthonormal(rng, d, k))
    comp = j_complement(space, sub)
    assert comp.dim == d - k
    if sub.dim and comp.dim:
        cross = sub.basis.conj().T @ space.gram @ comp.basis
        assert np.max(np.abs(cross)) < 1e-8


# ---------------------------------------------------------------------------
# oblique projection


def test_oblique_projection_splits_coordinates():
    onto = Subspace.from_columns(2, np.array([[1.0], [0.0]], dtype=complex))
    along = Subspace.from_columns(2, np.array([[1.0], [1.0]], dtype=complex))
    p = oblique_projection(onto, along)
    assert np.allclose(p @ p, p, atol=1e-12)
    assert np.allclose(p @ np.array([1.0, 0.0]), [1.0, 0.0])
    assert np.allclose(p @ np.array([1.0, 1.0]), [0.0, 0.0], atol=1e-12)


@given(dims, seeds)
def test_oblique_projection_range_and_kernel(d, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, d + 1))
    # columns of a well-conditioned invertible matrix give a direct sum
    t = helpers.random_orthonormal(rng, d, d) + 0.1 * (
        rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    )
    onto = Subspace.from_columns(d, t[:, :k])
    along = Subspace.from_columns(d, t[:, k:])
    p = oblique_projection(onto, along)
    assert np.allclose(p @ p, p, atol=1e-8)
    assert np.allclose(p @ t[:, :k], t[:, :k], atol=1e-8)
    assert np.allclose(p @ t[:, k:], 0.0, atol=1e-8)


def test_oblique_projection_requires_direct_sum():
    onto = Subspace.from_columns(3, np.eye(3, 1, dtype=complex))
    along = Subspace.from_columns(3, np.eye(3, 1, dtype=complex))
    with pytest.raises(NumericalDefectError):
        oblique_projection(onto, along)
