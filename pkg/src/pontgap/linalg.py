"""Dense complex linear-algebra kernels with explicit tolerances.

Everything downstream (inertia, spectra, gap subspaces) reduces to the
handful of primitives here.  Eigenvalue and singular-value work is
delegated to LAPACK through numpy; this module owns the tolerance
policy: when a singular value counts as zero, when two eigenvalues
count as one, and when an imaginary part counts as noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EigensolverError,
    NonHermitianError,
    SingularMatrixError,
    ValidationError,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "as_complex_matrix",
    "frob",
    "clustering_threshold",
    "hermitian_eigen",
    "complex_eigen",
    "rank_tol",
    "null_space",
    "solve",
    "orthonormal_columns",
]

#: scale factor for merging nearby eigenvalues into one cluster
CLUSTERING_SCALE = 1e-6


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair used by every numeric decision.

    ``rel`` scales with the data (e.g. ``rel * sigma_max`` for rank
    cuts), ``abs`` is the hard floor.  Both must lie in (0, 1).
    """

    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        for name, value in (("rel", self.rel), ("abs", self.abs)):
            if not (0.0 < value < 1.0):
                raise ValidationError(
                    f"tolerance.{name} must lie in (0, 1), got {value!r}"
                )

    def singular_cutoff(self, sigma_max: float) -> float:
        return max(self.abs, self.rel * sigma_max)


DEFAULT_TOL = Tolerance()


def as_complex_matrix(a, *, square: bool = False) -> np.ndarray:
    """Coerce ``a`` to a 2-D complex128 array, validating finiteness."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-D array, got ndim={m.ndim}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite")
    return m


def frob(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))


def clustering_threshold(m) -> float:
    """Distance below which two computed eigenvalues of ``m`` merge."""
    return CLUSTERING_SCALE * max(1.0, frob(m))


def hermitian_eigen(h, tol: Tolerance = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like
        Square matrix with ``||h - h^*||_F <= tol.rel * ||h||_F``
        (plus the absolute floor).  It is symmetrized before solving.
    tol : Tolerance

    Returns
    -------
    (w, v) : ndarray, ndarray
        Real eigenvalues in ascending order and a unitary matrix of
        eigenvectors, column ``v[:, i]`` belonging to ``w[i]``.
    """
    h = as_complex_matrix(h, square=True)
    defect = frob(h - h.conj().T)
    if defect > tol.singular_cutoff(frob(h)):
        raise NonHermitianError(
            f"matrix is not Hermitian: ||h - h^*||_F = {defect:.3e}"
        )
    if h.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    try:
        w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise EigensolverError(f"hermitian eigensolver failed: {exc}") from exc
    return w, v


def complex_eigen(m, tol: Tolerance = DEFAULT_TOL) -> list[tuple[complex, int]]:
    """Clustered eigenvalues of a general complex matrix.

    Raw eigenvalues closer than ``clustering_threshold(m)`` are merged
    (transitively) into a single value with summed multiplicity; the
    reported value is the mean of the cluster.  Returned sorted by
    ``(real, imag)``; multiplicities always sum to the dimension.
    """
    m = as_complex_matrix(m, square=True)
    d = m.shape[0]
    if d == 0:
        return []
    try:
        raw = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigenvalue iteration failed: {exc}") from exc
    thresh = clustering_threshold(m)

    # transitive merge of raw values, then of cluster means, so that
    # distinct reported values always differ by more than the threshold
    clusters = [(value, 1) for value in raw]
    merged = True
    while merged:
        merged = False
        out: list[tuple[complex, int]] = []
        for value, count in sorted(clusters, key=lambda vc: (vc[0].real, vc[0].imag)):
            for i, (ov, oc) in enumerate(out):
                if abs(value - ov) <= thresh:
                    total = oc + count
                    out[i] = ((ov * oc + value * count) / total, total)
                    merged = True
                    break
            else:
                out.append((value, count))
        clusters = out
    clusters.sort(key=lambda vc: (vc[0].real, vc[0].imag))
    return [(complex(v), int(c)) for v, c in clusters]


def _singular_values(m) -> np.ndarray:
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def rank_tol(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank: singular values above ``max(abs, rel*sigma_max)``."""
    m = as_complex_matrix(m)
    s = _singular_values(m)
    if s.size == 0:
        return 0
    return int(np.sum(s > tol.singular_cutoff(float(s[0]))))


def null_space(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the kernel, as columns.

    The same singular-value cutoff as :func:`rank_tol` decides which
    directions belong to the kernel, so ``rank + nullity == cols``
    holds by construction.
    """
    m = as_complex_matrix(m)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    if rows == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    cutoff = tol.singular_cutoff(float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def solve(m, b, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve ``m x = b`` for invertible ``m``.

    Raises
    ------
    SingularMatrixError
        If the smallest singular value of ``m`` is below the cutoff;
        the error carries that value.
    """
    m = as_complex_matrix(m, square=True)
    b = np.asarray(b, dtype=complex)
    if b.shape[0] != m.shape[0]:
        raise DimensionMismatchError(
            f"right-hand side has {b.shape[0]} rows, matrix has {m.shape[0]}"
        )
    s = _singular_values(m)
    smallest = float(s[-1]) if s.size else 0.0
    if m.shape[0] and smallest <= tol.singular_cutoff(float(s[0])):
        raise SingularMatrixError(
            f"matrix is singular to tolerance (sigma_min = {smallest:.3e})",
            smallest_singular_value=smallest,
        )
    if m.shape[0] == 0:
        return np.zeros_like(b)
    return np.linalg.solve(m, b)


def orthonormal_columns(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis for the column span of ``m`` (SVD range)."""
    m = as_complex_matrix(m)
    if m.shape[1] == 0 or m.shape[0] == 0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    cutoff = tol.singular_cutoff(float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return u[:, :rank]
