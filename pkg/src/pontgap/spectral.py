"""Spectra, root subspaces and interval counts for J-selfadjoint matrices.

An operator A on an indefinite space is J-selfadjoint when ``J A`` is
Hermitian.  Its spectrum is closed under conjugation; eigenvalue counts
over an open real interval are taken with algebraic multiplicity, via
the dimension of the corresponding sum of root subspaces.

Spectral data is memoized per operator instance behind a lock; the
memo is purely an optimization and never changes any result.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field, replace

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    EndpointInSpectrumError,
    IllPosedIntervalError,
    NonHermitianError,
    NotAnEigenvalueError,
    NumericalDefectError,
    SingularMatrixError,
    SpectrumSymmetryError,
)
from .indefinite import IndefiniteSpace, Subspace, validate_space
from .linalg import DEFAULT_TOL, Tolerance

__all__ = [
    "Interval",
    "Eigenvalue",
    "Spectrum",
    "JSelfadjointOperator",
    "validate_operator",
    "spectrum",
    "root_subspace",
    "gap_subspace",
    "complement_subspace",
    "eig_count",
    "gap_signature",
    "spectral_projection",
    "restrict_operator",
]

#: |Im(lambda)| <= REALNESS_SCALE * max(1, |lambda|) snaps to the real axis
REALNESS_SCALE = 1e-6

#: ambiguity band around interval endpoints, times max(1, ||A||_F)
ENDPOINT_GUARD_SCALE = 1e-6

#: below this distance (times max(1, ||A||_F)) an eigenvalue is taken to
#: sit exactly on the endpoint and is excluded from the open interval
ENDPOINT_EXACT_SCALE = 1e-12

#: singular values below ROOT_NULLITY_SCALE * max(1, ||A||_F) count as
#: zero while growing root subspaces (absorbs defective-eigenvalue error)
ROOT_NULLITY_SCALE = 1e-7

#: tolerated invariance defect of a root-subspace union, times max(1, ||A||_F)
_INVARIANCE_SLACK = 1e-5


@dataclass(frozen=True)
class Interval:
    """Open real interval; endpoints may be ``-inf`` / ``+inf``."""

    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = float(self.lower), float(self.upper)
        if math.isnan(lo) or math.isnan(hi):
            raise IllPosedIntervalError("interval endpoints must not be NaN")
        if not lo < hi:
            raise IllPosedIntervalError(
                f"interval requires lower < upper, got ({lo}, {hi})"
            )
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def contains(self, x: float) -> bool:
        return self.lower < x < self.upper

    def finite_endpoints(self) -> tuple[float, ...]:
        return tuple(e for e in (self.lower, self.upper) if math.isfinite(e))

    def __str__(self):
        return f"({self.lower}, {self.upper})"


@dataclass(frozen=True)
class Eigenvalue:
    """A clustered eigenvalue with its algebraic multiplicity."""

    value: complex
    multiplicity: int

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0


@dataclass(frozen=True)
class Spectrum:
    """Clustered, conjugation-closed spectrum, sorted by (real, imag)."""

    entries: tuple[Eigenvalue, ...]

    @property
    def dim(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def values(self) -> list[complex]:
        return [e.value for e in self.entries]

    def real_entries(self) -> list[Eigenvalue]:
        return [e for e in self.entries if e.is_real]


@dataclass(frozen=True, eq=False)
class JSelfadjointOperator:
    """A J-selfadjoint matrix on an indefinite space.

    Construct through :func:`validate_operator`.  Instances memoize
    spectral computations; the memo is internal and thread-safe.
    """

    space: IndefiniteSpace
    matrix: np.ndarray = field(repr=False)
    _memo: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def _cached(self, key, build):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = build()
        with self._lock:
            return self._memo.setdefault(key, value)


def validate_operator(
    space: IndefiniteSpace, a, tol: Tolerance = DEFAULT_TOL
) -> JSelfadjointOperator:
    """Check shape and J-selfadjointness (``J A`` Hermitian to tolerance)."""
    m = linalg.as_complex_matrix(a, square=True)
    if m.shape[0] != space.dim:
        raise DimensionMismatchError(
            f"operator is {m.shape[0]}x{m.shape[1]}, space has dimension {space.dim}"
        )
    ja = space.gram @ m
    defect = linalg.frob(ja - ja.conj().T)
    scale = linalg.frob(space.gram) * linalg.frob(m)
    if defect > tol.singular_cutoff(scale):
        raise NonHermitianError(
            f"operator is not J-selfadjoint: ||JA - (JA)^*||_F = {defect:.3e}"
        )
    return JSelfadjointOperator(space=space, matrix=m.copy())


def _pair_conjugates(values, matrix_norm_scale):
    """Symmetrize non-real clusters into exact conjugate pairs."""
    pair_tol = 10.0 * linalg.CLUSTERING_SCALE * matrix_norm_scale
    reals, positive, negative = [], [], []
    for value, mult in values:
        if abs(value.imag) <= REALNESS_SCALE * max(1.0, abs(value)):
            reals.append((complex(value.real, 0.0), mult))
        elif value.imag > 0:
            positive.append((value, mult))
        else:
            negative.append((value, mult))
    paired = []
    remaining = list(negative)
    for value, mult in sorted(positive, key=lambda vm: (vm[0].real, vm[0].imag)):
        target = value.conjugate()
        best, best_dist = None, math.inf
        for i, (nv, _) in enumerate(remaining):
            dist = abs(nv - target)
            if dist < best_dist:
                best, best_dist = i, dist
        if best is None or best_dist > pair_tol:
            raise SpectrumSymmetryError(
                f"eigenvalue {value} has no conjugate partner within {pair_tol:.3e}"
            )
        nv, nm = remaining.pop(best)
        if nm != mult:
            raise SpectrumSymmetryError(
                f"conjugate pair {value} / {nv} has multiplicities {mult} != {nm}"
            )
        center = 0.5 * (value + nv.conjugate())
        paired.append((center, mult))
        paired.append((center.conjugate(), mult))
    if remaining:
        raise SpectrumSymmetryError(
            f"unpaired eigenvalues below the real axis: {[v for v, _ in remaining]}"
        )
    return reals + paired


def spectrum(op: JSelfadjointOperator, tol: Tolerance = DEFAULT_TOL) -> Spectrum:
    """Clustered spectrum with realness snapping and conjugate pairing."""

    def build():
        clusters = linalg.complex_eigen(op.matrix, tol)
        scale = max(1.0, linalg.frob(op.matrix))
        symmetrized = _pair_conjugates(clusters, scale)
        entries = tuple(
            Eigenvalue(value=v, multiplicity=m)
            for v, m in sorted(symmetrized, key=lambda vm: (vm[0].real, vm[0].imag))
        )
        return Spectrum(entries=entries)

    return op._cached(("spectrum", tol.rel, tol.abs), build)


def _match_entry(op, value, tol):
    spec = spectrum(op, tol)
    if not spec.entries:
        raise NotAnEigenvalueError("operator has an empty spectrum")
    value = complex(value)
    dists = [abs(e.value - value) for e in spec.entries]
    idx = int(np.argmin(dists))
    if dists[idx] > linalg.clustering_threshold(op.matrix):
        raise NotAnEigenvalueError(
            f"{value} is not within clustering distance of any eigenvalue "
            f"(closest: {spec.entries[idx].value})"
        )
    return spec, idx


def _root_basis(op, idx, tol):
    spec = spectrum(op, tol)
    entry = spec.entries[idx]
    d = op.dim
    m_shift = op.matrix - entry.value * np.eye(d, dtype=complex)
    eta = min(ROOT_NULLITY_SCALE * max(1.0, linalg.frob(op.matrix)), 0.1)
    kernel_tol = replace(tol, abs=eta)
    basis = linalg.null_space(m_shift, kernel_tol)
    for _ in range(d):
        if basis.shape[1] >= d:
            break
        lifted = (np.eye(d, dtype=complex) - basis @ basis.conj().T) @ m_shift
        grown = linalg.null_space(lifted, kernel_tol)
        if grown.shape[1] <= basis.shape[1]:
            break
        basis = grown
    if basis.shape[1] != entry.multiplicity:
        raise NumericalDefectError(
            f"root subspace of {entry.value} has dimension {basis.shape[1]}, "
            f"algebraic multiplicity is {entry.multiplicity}"
        )
    return basis


def root_subspace(
    op: JSelfadjointOperator, value, tol: Tolerance = DEFAULT_TOL
) -> Subspace:
    """Root subspace of the eigenvalue nearest ``value``.

    Grows ``ker (A - lambda I)^k`` one power at a time, representing
    each power through re-orthonormalized kernels instead of explicit
    matrix powers, until the nullity stops increasing (at most d
    steps).  The result has the eigenvalue's algebraic multiplicity.
    """
    _, idx = _match_entry(op, value, tol)
    basis = op._cached(("root", tol.rel, tol.abs, idx), lambda: _root_basis(op, idx, tol))
    return Subspace(op.dim, basis)


def _selection(op, interval: Interval, tol):
    """Indices of spectrum entries counted inside the open interval.

    Raises when a finite endpoint falls ambiguously close to an
    eigenvalue; an eigenvalue indistinguishable from the endpoint at
    machine resolution is treated as sitting on it (hence outside).
    """
    spec = spectrum(op, tol)
    scale = max(1.0, linalg.frob(op.matrix))
    guard = ENDPOINT_GUARD_SCALE * scale
    exact = ENDPOINT_EXACT_SCALE * scale
    included = []
    for idx, entry in enumerate(spec.entries):
        on_endpoint = False
        for endpoint in interval.finite_endpoints():
            dist = abs(entry.value - endpoint)
            if dist <= exact:
                on_endpoint = True
            elif dist <= guard:
                raise EndpointInSpectrumError(
                    f"eigenvalue {entry.value} lies within {dist:.3e} of "
                    f"endpoint {endpoint}; counting over {interval} is ill-posed",
                    endpoint=endpoint,
                    eigenvalue=entry.value,
                    distance=dist,
                )
        if on_endpoint or not entry.is_real:
            continue
        if interval.contains(entry.value.real):
            included.append(idx)
    return spec, tuple(included)


def _union_basis(op, indices, tol):
    if not indices:
        return np.zeros((op.dim, 0), dtype=complex)

    def build():
        spec = spectrum(op, tol)
        blocks = [_cached_root(op, i, tol) for i in indices]
        stacked = np.hstack(blocks)
        basis = linalg.orthonormal_columns(stacked, tol)
        want = sum(spec.entries[i].multiplicity for i in indices)
        if basis.shape[1] != want:
            raise NumericalDefectError(
                f"root-subspace union has rank {basis.shape[1]}, expected {want}"
            )
        return basis

    return op._cached(("union", tol.rel, tol.abs, frozenset(indices)), build)


def _cached_root(op, idx, tol):
    return op._cached(("root", tol.rel, tol.abs, idx), lambda: _root_basis(op, idx, tol))


def gap_subspace(
    op: JSelfadjointOperator, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> Subspace:
    """Sum of root subspaces over real eigenvalues inside the interval."""
    _, included = _selection(op, interval, tol)
    return Subspace(op.dim, _union_basis(op, included, tol))


def complement_subspace(
    op: JSelfadjointOperator, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> Subspace:
    """Sum of root subspaces over all eigenvalues *not* counted inside."""
    spec, included = _selection(op, interval, tol)
    excluded = tuple(i for i in range(len(spec.entries)) if i not in included)
    return Subspace(op.dim, _union_basis(op, excluded, tol))


def eig_count(
    op: JSelfadjointOperator, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> int:
    """Number of eigenvalues in the open interval, with multiplicity."""
    return gap_subspace(op, interval, tol).dim


def gap_signature(
    op: JSelfadjointOperator, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> int:
    """Signature of the Gram form on the interval's gap subspace."""
    from .indefinite import signature

    return signature(op.space, gap_subspace(op, interval, tol), tol)


def spectral_projection(
    op: JSelfadjointOperator, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """J-selfadjoint projection onto the interval's gap subspace.

    Built by block change of basis: the projection acts as the
    identity on the gap subspace and as zero on the sum of all other
    root subspaces.  Requires both finite endpoints to be away from
    the spectrum (enforced by the endpoint guard).
    """
    spec, included = _selection(op, interval, tol)
    excluded = tuple(i for i in range(len(spec.entries)) if i not in included)
    b_in = _union_basis(op, included, tol)
    b_out = _union_basis(op, excluded, tol)
    t = np.hstack([b_in, b_out])
    if t.shape[1] != op.dim:
        raise NumericalDefectError(
            f"root subspaces span {t.shape[1]} of {op.dim} dimensions"
        )
    try:
        t_inv = linalg.solve(t, np.eye(op.dim, dtype=complex), tol)
    except SingularMatrixError as exc:
        raise NumericalDefectError(
            "root-subspace sum fails to span the space "
            f"(sigma_min = {exc.smallest_singular_value:.3e})"
        ) from exc
    m = b_in.shape[1]
    return t[:, :m] @ t_inv[:m, :]


def restrict_operator(
    op: JSelfadjointOperator, sub: Subspace, tol: Tolerance = DEFAULT_TOL
) -> tuple[IndefiniteSpace, JSelfadjointOperator]:
    """Compress operator and Gram form to an invariant subspace.

    ``sub`` must be A-invariant and J-nondegenerate; returns the
    compressed space (Gram ``B^* J B``) and operator (``B^* A B``)
    in the coordinates of the orthonormal basis B.
    """
    if sub.ambient_dim != op.dim:
        raise DimensionMismatchError("subspace does not live in the operator's space")
    b = sub.basis
    ab = op.matrix @ b
    compressed = b.conj().T @ ab
    residual = linalg.frob(ab - b @ compressed)
    if residual > _INVARIANCE_SLACK * max(1.0, linalg.frob(op.matrix)):
        raise NumericalDefectError(
            f"subspace is not invariant (residual {residual:.3e})"
        )
    small_space = validate_space(b.conj().T @ (op.space.gram @ b), tol)
    return small_space, validate_operator(small_space, compressed, tol)
