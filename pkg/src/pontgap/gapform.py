"""The quadratic form certifying spectral location in an interval.

For real a < b the Hermitian matrix ``G = J (A - a)(A - b)`` represents
the form ``[(A - a)x, (A - b)x]``.  Its inertia flips between two dual
situations:

* ``[a, b]`` inside the resolvent set: inertia ``(d - kappa, kappa, 0)``,
  with a kappa-dimensional subspace of strictly negative form values;
* all of the (real) spectrum inside ``(a, b)``: inertia
  ``(kappa, d - kappa, 0)``, the signs reversed.

With a definite Gram (``J = I``, kappa = 0) this degenerates to the
classical semidefiniteness test on ``(T - a)(T - b)``, exposed here as
:func:`hilbert_gap_check`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import InertiaMismatchError, PreconditionError
from .indefinite import INERTIA_ZERO_SCALE, Inertia, Subspace, inertia_of_hermitian
from .linalg import DEFAULT_TOL, Tolerance
from .spectral import ENDPOINT_GUARD_SCALE, JSelfadjointOperator, spectrum

__all__ = [
    "GapForm",
    "GapCase",
    "GapDecomposition",
    "GapLocation",
    "build_gap_form",
    "decompose_resolvent_gap",
    "decompose_spectrum_inside",
    "hilbert_gap_check",
]


@dataclass(frozen=True)
class GapForm:
    """Interval data (a, b) and the Hermitian matrix of the form."""

    a: float
    b: float
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def evaluate(self, x) -> float:
        """Form value x^* G x (real up to roundoff)."""
        x = np.asarray(x, dtype=complex)
        return float((x.conj() @ (self.matrix @ x)).real)


class GapCase(enum.Enum):
    RESOLVENT_GAP = "resolvent_gap"
    SPECTRUM_INSIDE = "spectrum_inside"


@dataclass(frozen=True)
class GapDecomposition:
    """Direct splitting of the space by the sign of the gap form."""

    case: GapCase
    form: GapForm
    inertia: Inertia
    m_minus: Subspace
    m_plus: Subspace


class GapLocation(enum.Enum):
    GAP_IN_RESOLVENT = "gap_in_resolvent"
    SPECTRUM_IN_CLOSURE = "spectrum_in_closure"
    NEITHER = "neither"


def build_gap_form(
    op: JSelfadjointOperator, a: float, b: float, tol: Tolerance = DEFAULT_TOL
) -> GapForm:
    """Assemble ``G = J (A - a)(A - b)``, symmetrized."""
    a, b = float(a), float(b)
    if not a < b:
        raise PreconditionError(f"gap form requires a < b, got a={a}, b={b}")
    if not (np.isfinite(a) and np.isfinite(b)):
        raise PreconditionError("gap form endpoints must be finite")
    d = op.dim
    eye = np.eye(d, dtype=complex)
    g = op.space.gram @ ((op.matrix - a * eye) @ (op.matrix - b * eye))
    return GapForm(a=a, b=b, matrix=0.5 * (g + g.conj().T))


def _segment_distance(value: complex, a: float, b: float) -> float:
    """Distance from a point of C to the real segment [a, b]."""
    x = min(max(value.real, a), b)
    return abs(value - x)


def _margin(op) -> float:
    return ENDPOINT_GUARD_SCALE * max(1.0, linalg.frob(op.matrix))


def _split_by_sign(form: GapForm, tol):
    w, v = linalg.hermitian_eigen(form.matrix, tol)
    band = INERTIA_ZERO_SCALE * max(1.0, linalg.frob(form.matrix))
    inertia = Inertia(
        plus=int(np.sum(w > band)),
        minus=int(np.sum(w < -band)),
        zero=int(np.sum(np.abs(w) <= band)),
    )
    d = form.matrix.shape[0]
    negative = Subspace(d, v[:, w < -band])
    positive = Subspace(d, v[:, w > band])
    return inertia, negative, positive


def decompose_resolvent_gap(
    op: JSelfadjointOperator, a: float, b: float, tol: Tolerance = DEFAULT_TOL
) -> GapDecomposition:
    """Sign splitting when ``[a, b]`` lies in the resolvent set.

    Requires every eigenvalue to keep a guard distance from the
    segment [a, b].  The inertia of G must come out as
    ``(d - kappa, kappa, 0)``; ``m_minus`` (negative form values) then
    has dimension kappa and ``m_plus`` fills the rest.
    """
    form = build_gap_form(op, a, b, tol)
    margin = _margin(op)
    for entry in spectrum(op, tol).entries:
        dist = _segment_distance(entry.value, form.a, form.b)
        if dist <= margin:
            raise PreconditionError(
                f"eigenvalue {entry.value} is within {dist:.3e} of [{form.a}, {form.b}]; "
                "the segment must lie in the resolvent set"
            )
    inertia, negative, positive = _split_by_sign(form, tol)
    kappa = op.space.kappa_minus
    expected = (op.dim - kappa, kappa, 0)
    if (inertia.plus, inertia.minus, inertia.zero) != expected:
        raise InertiaMismatchError(
            f"gap form inertia {(inertia.plus, inertia.minus, inertia.zero)} "
            f"differs from {expected} forced by a resolvent gap",
            inertia=inertia,
        )
    return GapDecomposition(
        case=GapCase.RESOLVENT_GAP,
        form=form,
        inertia=inertia,
        m_minus=negative,
        m_plus=positive,
    )


def decompose_spectrum_inside(
    op: JSelfadjointOperator, a: float, b: float, tol: Tolerance = DEFAULT_TOL
) -> GapDecomposition:
    """Sign splitting when the whole spectrum is real inside ``(a, b)``.

    The inertia of G must come out as ``(kappa, d - kappa, 0)``; here
    ``m_minus`` carries *positive* form values (dimension kappa) and
    ``m_plus`` negative ones, mirroring the resolvent-gap case.
    """
    form = build_gap_form(op, a, b, tol)
    margin = _margin(op)
    for entry in spectrum(op, tol).entries:
        if not entry.is_real:
            raise PreconditionError(
                f"spectrum must be real, found eigenvalue {entry.value}"
            )
        x = entry.value.real
        if not (form.a + margin < x < form.b - margin):
            raise PreconditionError(
                f"eigenvalue {x} is not inside ({form.a}, {form.b}) with margin"
            )
    inertia, negative, positive = _split_by_sign(form, tol)
    kappa = op.space.kappa_minus
    expected = (kappa, op.dim - kappa, 0)
    if (inertia.plus, inertia.minus, inertia.zero) != expected:
        raise InertiaMismatchError(
            f"gap form inertia {(inertia.plus, inertia.minus, inertia.zero)} "
            f"differs from {expected} forced by an interior spectrum",
            inertia=inertia,
        )
    return GapDecomposition(
        case=GapCase.SPECTRUM_INSIDE,
        form=form,
        inertia=inertia,
        m_minus=positive,
        m_plus=negative,
    )


def hilbert_gap_check(t, a: float, b: float, tol: Tolerance = DEFAULT_TOL) -> GapLocation:
    """Classical semidefiniteness test for a Hermitian matrix.

    ``(T - a)(T - b) >= 0`` iff the open interval (a, b) misses the
    spectrum; ``<= 0`` iff the spectrum lies in the closure [a, b].
    Eigenvalues inside the zero band count as zero, so both criteria
    may hold simultaneously (spectrum exactly {a, b}); the resolvent
    verdict wins.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise PreconditionError(f"check requires a < b, got a={a}, b={b}")
    t = linalg.as_complex_matrix(t, square=True)
    # hermitian_eigen re-validates Hermiticity of t itself
    wt, _ = linalg.hermitian_eigen(t, tol)
    eye = np.eye(t.shape[0], dtype=complex)
    g = (t - a * eye) @ (t - b * eye)
    g = 0.5 * (g + g.conj().T)
    band = INERTIA_ZERO_SCALE * max(1.0, linalg.frob(g))
    inertia = inertia_of_hermitian(g, band, tol)
    if inertia.minus == 0:
        return GapLocation.GAP_IN_RESOLVENT
    if inertia.plus == 0:
        return GapLocation.SPECTRUM_IN_CLOSURE
    return GapLocation.NEITHER
