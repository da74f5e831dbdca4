"""Indefinite inner-product spaces and subspace geometry.

A space is C^d equipped with ``[x, y] = y^* J x`` for an invertible
Hermitian Gram matrix ``J``.  Its inertia ``(kappa_plus, kappa_minus)``
counts positive and negative eigenvalues of ``J``; ``kappa_minus`` is
the number of negative squares, the quantity every bound in
:mod:`pontgap.theorem` is expressed in.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    NumericalDefectError,
    SingularMatrixError,
    ValidationError,
)
from .linalg import DEFAULT_TOL, Tolerance

__all__ = [
    "Inertia",
    "IndefiniteSpace",
    "Subspace",
    "validate_space",
    "inertia_of_hermitian",
    "subspace_inertia",
    "signature",
    "isotropic_part",
    "sum_subspaces",
    "intersect_subspaces",
    "j_complement",
    "oblique_projection",
]

#: |eigenvalue| <= INERTIA_ZERO_SCALE * max(1, ||gram||_F) counts as zero
INERTIA_ZERO_SCALE = 1e-8

#: orthonormality slack accepted by Subspace validation
_ORTHO_SLACK = 1e-8


@dataclass(frozen=True)
class Inertia:
    """Counts of positive / negative / zero eigenvalues of a Hermitian form."""

    plus: int
    minus: int
    zero: int

    def __post_init__(self):
        if min(self.plus, self.minus, self.zero) < 0:
            raise ValidationError("inertia components must be non-negative")

    @property
    def dim(self) -> int:
        return self.plus + self.minus + self.zero

    @property
    def sig(self) -> int:
        return self.plus - self.minus


@dataclass(frozen=True)
class IndefiniteSpace:
    """C^dim with Gram matrix ``gram`` (Hermitian, invertible).

    Construct through :func:`validate_space`; the constructor assumes
    ``gram`` is already symmetrized.
    """

    dim: int
    gram: np.ndarray = field(repr=False)
    kappa_plus: int
    kappa_minus: int

    def __post_init__(self):
        self.gram.setflags(write=False)

    @property
    def kappa(self) -> int:
        """Number of negative squares (the kappa of all bounds)."""
        return self.kappa_minus

    def inner(self, x, y) -> complex:
        """Indefinite inner product [x, y] = y^* J x."""
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        return complex(y.conj() @ (self.gram @ x))

    def same_space(self, other: "IndefiniteSpace") -> bool:
        return self.dim == other.dim and np.array_equal(self.gram, other.gram)


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^ambient_dim given by an orthonormal column basis."""

    ambient_dim: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = self.basis
        if b.shape[0] != self.ambient_dim:
            raise DimensionMismatchError(
                f"basis has {b.shape[0]} rows, ambient dimension is {self.ambient_dim}"
            )
        if b.shape[1] > 0:
            defect = float(np.linalg.norm(b.conj().T @ b - np.eye(b.shape[1])))
            if defect > _ORTHO_SLACK:
                raise ValidationError(
                    f"basis columns are not orthonormal (defect {defect:.3e})"
                )
        b.setflags(write=False)

    @classmethod
    def from_columns(cls, ambient_dim: int, columns, tol: Tolerance = DEFAULT_TOL):
        """Span of arbitrary columns, orthonormalized by SVD."""
        cols = np.asarray(columns, dtype=complex).reshape(ambient_dim, -1)
        return cls(ambient_dim, linalg.orthonormal_columns(cols, tol))

    @classmethod
    def zero(cls, ambient_dim: int):
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim: int):
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        """Euclidean orthogonal projector onto the subspace."""
        return self.basis @ self.basis.conj().T

    def contains(self, vector, tol: Tolerance = DEFAULT_TOL) -> bool:
        v = np.asarray(vector, dtype=complex).reshape(self.ambient_dim)
        scale = float(np.linalg.norm(v))
        if scale == 0.0:
            return True
        residual = v - self.projector() @ v
        return float(np.linalg.norm(residual)) <= tol.singular_cutoff(scale) * 1e3


def validate_space(gram, tol: Tolerance = DEFAULT_TOL) -> IndefiniteSpace:
    """Check Hermiticity and invertibility of a Gram matrix.

    Returns the space with its inertia.  A Gram eigenvalue inside the
    zero band ``INERTIA_ZERO_SCALE * max(1, ||J||_F)`` makes the form
    degenerate and is rejected.
    """
    j = linalg.as_complex_matrix(gram, square=True)
    w, _ = linalg.hermitian_eigen(j, tol)
    band = INERTIA_ZERO_SCALE * max(1.0, linalg.frob(j))
    smallest = float(np.min(np.abs(w))) if w.size else 0.0
    if j.shape[0] and smallest <= band:
        raise SingularMatrixError(
            f"gram matrix is singular to tolerance (|eig|_min = {smallest:.3e})",
            smallest_singular_value=smallest,
        )
    plus = int(np.sum(w > band))
    minus = int(np.sum(w < -band))
    return IndefiniteSpace(
        dim=j.shape[0],
        gram=0.5 * (j + j.conj().T),
        kappa_plus=plus,
        kappa_minus=minus,
    )


def inertia_of_hermitian(h, zero_band: float, tol: Tolerance = DEFAULT_TOL) -> Inertia:
    """Inertia of a Hermitian matrix with an explicit zero band."""
    w, _ = linalg.hermitian_eigen(h, tol)
    return Inertia(
        plus=int(np.sum(w > zero_band)),
        minus=int(np.sum(w < -zero_band)),
        zero=int(np.sum(np.abs(w) <= zero_band)),
    )


def _check_ambient(space_dim: int, sub: Subspace):
    if sub.ambient_dim != space_dim:
        raise DimensionMismatchError(
            f"subspace lives in C^{sub.ambient_dim}, space is C^{space_dim}"
        )


def subspace_inertia(
    space: IndefiniteSpace, sub: Subspace, tol: Tolerance = DEFAULT_TOL
) -> Inertia:
    """Inertia of the Gram form compressed to ``sub``.

    The compressed form is ``B^* J B`` for the orthonormal basis B; the
    zero band scales with the ambient ``||J||_F``, not the compressed
    norm, so neutral subspaces report their zeros.
    """
    _check_ambient(space.dim, sub)
    b = sub.basis
    g = b.conj().T @ (space.gram @ b)
    band = INERTIA_ZERO_SCALE * max(1.0, linalg.frob(space.gram))
    return inertia_of_hermitian(0.5 * (g + g.conj().T), band, tol)


def signature(
    space: IndefiniteSpace, sub: Subspace, tol: Tolerance = DEFAULT_TOL
) -> int:
    """sig = kappa_plus - kappa_minus of the form restricted to ``sub``."""
    return subspace_inertia(space, sub, tol).sig


def isotropic_part(
    space: IndefiniteSpace, sub: Subspace, tol: Tolerance = DEFAULT_TOL
) -> Subspace:
    """Vectors of ``sub`` J-orthogonal to all of ``sub``.

    Computed as the kernel of the compressed Gram, mapped back through
    the basis; its dimension equals the zero inertia component.
    """
    _check_ambient(space.dim, sub)
    if sub.dim == 0:
        return Subspace.zero(space.dim)
    b = sub.basis
    g = b.conj().T @ (space.gram @ b)
    band = INERTIA_ZERO_SCALE * max(1.0, linalg.frob(space.gram))
    w, v = linalg.hermitian_eigen(0.5 * (g + g.conj().T), tol)
    kernel = v[:, np.abs(w) <= band]
    return Subspace(space.dim, b @ kernel)


def sum_subspaces(s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Span of the union of two subspaces."""
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatchError("subspaces live in different ambient spaces")
    stacked = np.hstack([s1.basis, s2.basis])
    return Subspace(s1.ambient_dim, linalg.orthonormal_columns(stacked, tol))


def intersect_subspaces(
    s1: Subspace, s2: Subspace, tol: Tolerance = DEFAULT_TOL
) -> Subspace:
    """Intersection via the joint kernel of both complement projectors.

    A vector lies in both subspaces iff it is annihilated by
    ``I - P1`` and ``I - P2``; stacking the two constraints and taking
    the null space keeps the computation rank-revealing.
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatchError("subspaces live in different ambient spaces")
    d = s1.ambient_dim
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(d)
    eye = np.eye(d, dtype=complex)
    stacked = np.vstack([eye - s1.projector(), eye - s2.projector()])
    return Subspace(d, linalg.null_space(stacked, tol))


def j_complement(
    space: IndefiniteSpace, sub: Subspace, tol: Tolerance = DEFAULT_TOL
) -> Subspace:
    """J-orthogonal companion: all x with [x, s] = 0 for s in ``sub``."""
    _check_ambient(space.dim, sub)
    if sub.dim == 0:
        return Subspace.full(space.dim)
    constraints = sub.basis.conj().T @ space.gram
    return Subspace(space.dim, linalg.null_space(constraints, tol))


def oblique_projection(
    onto: Subspace, along: Subspace, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Projection matrix onto ``onto`` along ``along``.

    The two subspaces must decompose the ambient space directly
    (dimensions summing to d and joint basis invertible).
    """
    if onto.ambient_dim != along.ambient_dim:
        raise DimensionMismatchError("subspaces live in different ambient spaces")
    d = onto.ambient_dim
    if onto.dim + along.dim != d:
        raise NumericalDefectError(
            f"direct sum must fill C^{d}: got {onto.dim} + {along.dim}"
        )
    t = np.hstack([onto.basis, along.basis])
    try:
        t_inv = linalg.solve(t, np.eye(d, dtype=complex), tol)
    except SingularMatrixError as exc:
        raise NumericalDefectError(
            f"subspaces are not complementary (sigma_min = "
            f"{exc.smallest_singular_value:.3e})"
        ) from exc
    return t[:, : onto.dim] @ t_inv[: onto.dim, :]
