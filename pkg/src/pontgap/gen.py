"""Seeded instance generation and bundled reference fixtures.

All randomness flows through the package's own xoshiro256** streams
(:mod:`pontgap.prng`), so a ``GenConfig`` pins an instance exactly —
same seed, same bytes, on any host.  Generated operators are resampled
until their spectra are unambiguous at the package's tolerance scales:
pairwise eigenvalue gaps and distances from the real axis stay above
``min_gap``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ResampleBudgetError, SingularMatrixError, ValidationError
from .indefinite import IndefiniteSpace, validate_space
from .linalg import DEFAULT_TOL, Tolerance
from .perturbation import OperatorPair, make_pair
from .prng import Xoshiro256StarStar
from .spectral import (
    REALNESS_SCALE,
    Interval,
    JSelfadjointOperator,
    validate_operator,
)

__all__ = [
    "GenConfig",
    "Fixture",
    "random_space",
    "random_operator",
    "random_pair",
    "random_real_spectrum_operator",
    "builtin_fixtures",
    "RESAMPLE_BUDGET",
]

RESAMPLE_BUDGET = 100

_TAG_SPACE = 1
_TAG_OPERATOR = 2
_TAG_PAIR = 3
_TAG_REAL_SPECTRUM = 4


@dataclass(frozen=True)
class GenConfig:
    """Shape, signature and seed of a generated instance.

    ``min_gap`` defaults to ``1e-3 * scale``; it is both the smallest
    accepted distance between distinct eigenvalues and the smallest
    accepted distance of a non-real eigenvalue from the real axis.
    """

    dim: int
    kappa_minus: int
    pert_rank: int = 0
    seed: int = 0
    min_gap: float | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError(f"dim must be positive, got {self.dim}")
        if not 0 <= self.kappa_minus <= self.dim:
            raise ValidationError(
                f"kappa_minus must lie in [0, dim], got {self.kappa_minus}"
            )
        if not 0 <= self.pert_rank <= self.dim:
            raise ValidationError(
                f"pert_rank must lie in [0, dim], got {self.pert_rank}"
            )
        if not self.scale > 0:
            raise ValidationError(f"scale must be positive, got {self.scale}")
        if self.min_gap is not None and not self.min_gap > 0:
            raise ValidationError(f"min_gap must be positive, got {self.min_gap}")

    @property
    def gap(self) -> float:
        return self.min_gap if self.min_gap is not None else 1e-3 * self.scale


@dataclass(frozen=True)
class Fixture:
    """A bundled pair with hand-checked counts for its interval."""

    name: str
    pair: OperatorPair
    interval: Interval
    expected: dict


def _complex_matrix(rng: Xoshiro256StarStar, rows: int, cols: int, scale: float):
    return np.array(
        [[scale * rng.complex_normal() for _ in range(cols)] for _ in range(rows)],
        dtype=complex,
    ).reshape(rows, cols)


def _haar_unitary(rng: Xoshiro256StarStar, d: int) -> np.ndarray:
    g = _complex_matrix(rng, d, d, 1.0)
    q, r = np.linalg.qr(g)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases.conj()


def _margins_ok(matrix: np.ndarray, min_gap: float) -> bool:
    """Spectrum is unambiguous: clean realness calls and open gaps."""
    values = np.linalg.eigvals(matrix)
    for v in values:
        im = abs(v.imag)
        if im > 0.1 * REALNESS_SCALE * max(1.0, abs(v)) and im < min_gap:
            return False
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) < min_gap:
                return False
    return True


def random_space(
    cfg: GenConfig, tol: Tolerance = DEFAULT_TOL, *, diagonal: bool = False
) -> IndefiniteSpace:
    """Gram matrix with the requested inertia.

    With ``diagonal=True`` returns the canonical
    ``diag(+1, ..., +1, -1, ..., -1)``; otherwise that matrix
    conjugated by a seeded Haar unitary.
    """
    kp = cfg.dim - cfg.kappa_minus
    j0 = np.diag(np.array([1.0] * kp + [-1.0] * cfg.kappa_minus, dtype=complex))
    if diagonal:
        return validate_space(j0, tol)
    rng = Xoshiro256StarStar.substream(cfg.seed, _TAG_SPACE)
    u = _haar_unitary(rng, cfg.dim)
    j = u @ j0 @ u.conj().T
    return validate_space(0.5 * (j + j.conj().T), tol)


def random_operator(
    space: IndefiniteSpace, cfg: GenConfig, tol: Tolerance = DEFAULT_TOL
) -> JSelfadjointOperator:
    """J-selfadjoint operator ``J^-1 H`` for a random Hermitian H."""
    rng = Xoshiro256StarStar.substream(cfg.seed, _TAG_OPERATOR)
    for _ in range(RESAMPLE_BUDGET):
        g = _complex_matrix(rng, space.dim, space.dim, cfg.scale)
        h = 0.5 * (g + g.conj().T)
        a = linalg.solve(space.gram, h, tol)
        if _margins_ok(a, cfg.gap):
            return validate_operator(space, a, tol)
    raise ResampleBudgetError(
        f"no operator with eigenvalue margins {cfg.gap} in {RESAMPLE_BUDGET} draws"
    )


def random_pair(
    space: IndefiniteSpace, cfg: GenConfig, tol: Tolerance = DEFAULT_TOL
) -> OperatorPair:
    """A1 plus a rank-``pert_rank`` J-selfadjoint perturbation.

    The perturbation is ``J^-1 sum_i c_i v_i v_i^*`` with signs
    ``c_i`` and vectors ``v_i`` from the pair stream; draws are
    rejected until the difference has exact rank ``pert_rank`` and A2
    passes the same margin checks as A1.
    """
    op1 = random_operator(space, cfg, tol)
    n = cfg.pert_rank
    if n == 0:
        return make_pair(op1, validate_operator(space, op1.matrix.copy(), tol), tol)
    rng = Xoshiro256StarStar.substream(cfg.seed, _TAG_PAIR)
    for _ in range(RESAMPLE_BUDGET):
        v = _complex_matrix(rng, space.dim, n, cfg.scale)
        signs = np.array([rng.sign() for _ in range(n)], dtype=float)
        p = (v * signs) @ v.conj().T
        a2 = op1.matrix + linalg.solve(space.gram, 0.5 * (p + p.conj().T), tol)
        if linalg.rank_tol(op1.matrix - a2, tol) != n:
            continue
        if not _margins_ok(a2, cfg.gap):
            continue
        op2 = validate_operator(space, a2, tol)
        return make_pair(op1, op2, tol)
    raise ResampleBudgetError(
        f"no rank-{n} perturbation with margins {cfg.gap} in {RESAMPLE_BUDGET} draws"
    )


def random_real_spectrum_operator(
    space: IndefiniteSpace,
    cfg: GenConfig,
    bounds: tuple[float, float] | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> JSelfadjointOperator:
    """Operator with prescribed-real, well-separated spectrum.

    Eigenvalues are drawn uniformly in ``bounds`` (default
    ``(-2 scale, 2 scale)``) and attached to a J-orthogonal eigenbasis
    built from a Cayley transform, so the result is J-selfadjoint with
    every eigenvalue real — the input situation of the
    interior-spectrum decomposition.
    """
    rng = Xoshiro256StarStar.substream(cfg.seed, _TAG_REAL_SPECTRUM)
    lo, hi = bounds if bounds is not None else (-2.0 * cfg.scale, 2.0 * cfg.scale)
    if not lo < hi:
        raise ValidationError(f"bounds must satisfy lo < hi, got ({lo}, {hi})")
    d = space.dim
    w, q = linalg.hermitian_eigen(space.gram, tol)
    eye = np.eye(d, dtype=complex)
    for _ in range(RESAMPLE_BUDGET):
        values = np.array(sorted(lo + (hi - lo) * rng.uniform() for _ in range(d)))
        if d > 1 and np.min(np.diff(values)) < cfg.gap:
            continue
        s = _complex_matrix(rng, d, d, 0.5)
        skew = 0.5 * (s - s.conj().T)
        k = (1.0 / w)[:, None] * skew
        try:
            v0 = linalg.solve(eye - k, eye + k, tol)
            v = q @ v0
            a = v @ np.diag(values.astype(complex)) @ linalg.solve(v, eye, tol)
        except SingularMatrixError:
            continue
        return validate_operator(space, a, tol)
    raise ResampleBudgetError(
        f"no real-spectrum operator with margins {cfg.gap} in {RESAMPLE_BUDGET} draws"
    )


def builtin_fixtures(tol: Tolerance = DEFAULT_TOL) -> tuple[Fixture, ...]:
    """The two bundled reference pairs with hand-checked counts.

    ``example1``: rank-one pair on C^2 with one negative square; the
    counts over (1/4, 2) differ by 2 with bound 3.  ``example3``: the
    equality case — counts over (0, inf) differ by exactly
    ``n + 2 kappa = 3``.
    """
    space1 = validate_space(np.diag([1.0, -1.0]).astype(complex), tol)
    a1_first = validate_operator(space1, np.array([[1, 1j], [1j, -1]], dtype=complex), tol)
    a2_first = validate_operator(space1, np.diag([0.5, 1.0]).astype(complex), tol)
    example1 = Fixture(
        name="example1",
        pair=make_pair(a1_first, a2_first, tol),
        interval=Interval(0.25, 2.0),
        expected={"n": 1, "kappa": 1, "eig1": 0, "eig2": 2, "sig1": 0, "sig2": 0, "slack": 1},
    )

    space3 = validate_space(np.diag([-1.0, 1.0, 1.0]).astype(complex), tol)
    a1_third = validate_operator(
        space3,
        np.array([[0, 100j, 0], [100j, 0, 0], [0, 0, 0]], dtype=complex),
        tol,
    )
    a2_third = validate_operator(
        space3,
        np.array([[0, 100j, 0], [100j, 400, 20], [0, 20, 1]], dtype=complex),
        tol,
    )
    example3 = Fixture(
        name="example3",
        pair=make_pair(a1_third, a2_third, tol),
        interval=Interval(0.0, np.inf),
        expected={"n": 1, "kappa": 1, "eig1": 0, "eig2": 3, "sig1": 0, "sig2": 1, "slack": 0},
    )
    return (example1, example3)
