"""Interval eigenvalue-count bounds for finite-rank pairs.

For a pair with ``rank(A1 - A2) = n`` on a space with ``kappa``
negative squares, and any open real interval avoiding the spectra's
endpoints ambiguity:

* the gap-subspace signatures differ by at most n, and
* the eigenvalue counts differ by at most ``n + 2 * kappa``.

:func:`verify_main_theorem` evaluates both inequalities and the two
refinements on a concrete pair.  :func:`proof_witness`
re-enacts the argument behind them: it picks an inner interval, splits
each operator's space by the sign of the gap form inside and outside,
and exhibits the subspace whose dimension is pinched between the two
counts.  Every object in the witness is a concrete matrix, so each
inequality is checked, not inferred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .errors import DeltaPrimeSearchError
from .gapform import decompose_resolvent_gap, decompose_spectrum_inside
from .indefinite import (
    Inertia,
    Subspace,
    intersect_subspaces,
    oblique_projection,
    subspace_inertia,
    sum_subspaces,
)
from .linalg import DEFAULT_TOL, Tolerance
from .perturbation import OperatorPair
from .spectral import (
    Interval,
    JSelfadjointOperator,
    complement_subspace,
    gap_subspace,
    restrict_operator,
    spectrum,
    _selection,
)

__all__ = [
    "GapReport",
    "WitnessReport",
    "verify_main_theorem",
    "choose_delta_prime",
    "proof_witness",
]

#: inner-interval endpoints must clear each spectrum by this multiple of
#: the operator's clustering threshold
DELTA_PRIME_MARGIN_FACTOR = 1e3


@dataclass(frozen=True)
class GapReport:
    """Everything the counting bounds say about one pair and one interval.

    ``equal_kappa_*`` concerns the refinement available when both gap
    subspaces carry the same number of negative squares (the count
    difference then drops to n); ``min_kappa_bound`` is the symmetric
    variant n + 2 min(kappa_plus, kappa_minus) obtained by flipping the
    sign of the inner product.
    """

    interval: Interval
    n: int
    kappa: int
    eig1: int
    eig2: int
    sig1: int
    sig2: int
    inertia1: Inertia
    inertia2: Inertia
    sig_bound_holds: bool
    eig_bound_holds: bool
    equal_kappa_applicable: bool
    equal_kappa_bound_holds: bool
    positive_type: bool
    min_kappa_bound: int
    min_kappa_bound_holds: bool
    slack: int


@dataclass(frozen=True)
class WitnessReport:
    """Dimensions and checks of the reconstructed proof objects.

    ``dim_minus_outJ`` / ``dim_plus_inJ`` are the negative-form part
    outside and the positive-inertia part inside the inner interval
    for operator J; ``dim_k`` is the pinched subspace's dimension.
    """

    delta_prime: Interval
    dim_minus_out1: int
    dim_plus_in1: int
    dim_minus_out2: int
    dim_plus_in2: int
    dim_k: int
    q1_injective_on_k: bool
    lower_bound_ok: bool
    upper_bound_ok: bool
    eig1_delta_prime: int
    eig2_delta_prime: int
    eig1_delta: int
    eig2_delta: int
    chain_holds: bool
    sig_chain_holds: bool


def verify_main_theorem(
    pair: OperatorPair, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> GapReport:
    """Evaluate the signature and counting bounds on one interval."""
    space = pair.space
    sub1 = gap_subspace(pair.op1, interval, tol)
    sub2 = gap_subspace(pair.op2, interval, tol)
    in1 = subspace_inertia(space, sub1, tol)
    in2 = subspace_inertia(space, sub2, tol)
    eig1, eig2 = sub1.dim, sub2.dim
    sig1, sig2 = in1.sig, in2.sig
    n, kappa = pair.n, space.kappa_minus
    diff = abs(eig1 - eig2)
    equal_kappa = in1.minus == in2.minus
    min_kappa_bound = n + 2 * min(space.kappa_plus, space.kappa_minus)
    return GapReport(
        interval=interval,
        n=n,
        kappa=kappa,
        eig1=eig1,
        eig2=eig2,
        sig1=sig1,
        sig2=sig2,
        inertia1=in1,
        inertia2=in2,
        sig_bound_holds=abs(sig2 - sig1) <= n,
        eig_bound_holds=diff <= n + 2 * kappa,
        equal_kappa_applicable=equal_kappa,
        equal_kappa_bound_holds=(not equal_kappa) or diff <= n,
        positive_type=(
            in1.minus == 0 and in1.zero == 0 and in2.minus == 0 and in2.zero == 0
        ),
        min_kappa_bound=min_kappa_bound,
        min_kappa_bound_holds=diff <= min_kappa_bound,
        slack=n + 2 * kappa - diff,
    )


def _dyadic(lo: float, hi: float, max_depth: int = 7):
    """Deterministic interior sweep of a finite window, coarse first."""
    for depth in range(1, max_depth + 1):
        steps = 1 << depth
        for num in range(1, steps, 2):
            yield lo + (hi - lo) * (num / steps)


def _downward(hi: float, floor: float):
    """hi - 1, hi - 2, hi - 4, ... staying above ``floor``."""
    step = 1.0
    for _ in range(60):
        x = hi - step
        if x <= floor:
            return
        yield x
        step *= 2.0


def _upward(lo: float, ceiling: float):
    step = 1.0
    for _ in range(60):
        x = lo + step
        if x >= ceiling:
            return
        yield x
        step *= 2.0


def _window_candidates(lo: float, hi: float):
    if math.isfinite(lo) and math.isfinite(hi):
        yield from _dyadic(lo, hi)
    elif math.isfinite(hi):
        yield from _downward(hi, -math.inf)
    elif math.isfinite(lo):
        yield from _upward(lo, math.inf)
    else:
        yield 0.0
        for x in _upward(0.0, math.inf):
            yield -x
            yield x


def choose_delta_prime(
    pair: OperatorPair, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> Interval:
    """Pick an inner interval (a, b) with [a, b] inside ``interval``.

    The result contains every eigenvalue of A1 counted in the outer
    interval (and, when the sweep allows, A2's as well, which makes
    the witness informative), with both endpoints keeping a margin of
    ``1e3 *`` clustering threshold from both spectra.
    """
    ops = (pair.op1, pair.op2)
    margins = [
        DELTA_PRIME_MARGIN_FACTOR * linalg.clustering_threshold(op.matrix)
        for op in ops
    ]

    def admissible(x: float) -> bool:
        if not interval.contains(x):
            return False
        for op, margin in zip(ops, margins):
            for entry in spectrum(op, tol).entries:
                if abs(entry.value - x) < margin:
                    return False
        return True

    def counted_reals(op):
        sp, included = _selection(op, interval, tol)
        return [sp.entries[i].value.real for i in included]

    reals1 = counted_reals(pair.op1)
    reals2 = counted_reals(pair.op2)
    tried = 0
    for targets in ((reals1 + reals2), reals1):
        lo_limit = min(targets) if targets else interval.upper
        a = None
        for x in _window_candidates(interval.lower, lo_limit):
            tried += 1
            if admissible(x):
                a = x
                break
        if a is None:
            continue
        hi_limit = max(targets) if targets else a
        b = None
        for x in _window_candidates(hi_limit, interval.upper):
            tried += 1
            if x > a and admissible(x):
                b = x
                break
        if b is not None:
            return Interval(a, b)
    raise DeltaPrimeSearchError(
        f"no admissible inner endpoints inside {interval} "
        f"after {tried} deterministic candidates"
    )


def _sign_split(op, sub: Subspace, a: float, b: float, inside: bool, tol):
    """Decompose an invariant subspace by the gap-form sign.

    Returns ``(m_minus, m_plus)`` in ambient coordinates.  For the
    inside piece the spectrum-interior splitting is used, outside the
    resolvent-gap one; a zero subspace splits trivially.
    """
    d = op.dim
    if sub.dim == 0:
        return Subspace.zero(d), Subspace.zero(d)
    _, compressed = restrict_operator(op, sub, tol)
    if inside:
        dec = decompose_spectrum_inside(compressed, a, b, tol)
    else:
        dec = decompose_resolvent_gap(compressed, a, b, tol)
    return (
        Subspace(d, sub.basis @ dec.m_minus.basis),
        Subspace(d, sub.basis @ dec.m_plus.basis),
    )


def proof_witness(
    pair: OperatorPair, interval: Interval, tol: Tolerance = DEFAULT_TOL
) -> WitnessReport:
    """Reconstruct the bounding argument on concrete subspaces.

    For each operator the space splits into the gap subspace of the
    inner interval and its complement; each half splits again by the
    sign of the gap form.  The subspace K (agreement vectors inside
    A2's negative-outside/positive-inside part) is then pinched:

    * ``dim K >= dim_minus_out2 + dim_plus_in2 - n`` (lower bound),
    * ``dim K <= dim_minus_out1 + dim_plus_in1`` (upper bound),

    the latter because the projection Q1 onto A1's corresponding part
    stays injective on K.  Combining both yields the count chain
    ``eig2(delta') <= n + 2 kappa + eig1(delta)``.
    """
    dp = choose_delta_prime(pair, interval, tol)
    a, b = dp.lower, dp.upper

    halves = {}
    for j, op in ((1, pair.op1), (2, pair.op2)):
        inside = gap_subspace(op, dp, tol)
        outside = complement_subspace(op, dp, tol)
        minus_in, plus_in = _sign_split(op, inside, a, b, inside=True, tol=tol)
        minus_out, plus_out = _sign_split(op, outside, a, b, inside=False, tol=tol)
        halves[j] = {
            "inside": inside,
            "minus_in": minus_in,
            "plus_in": plus_in,
            "minus_out": minus_out,
            "plus_out": plus_out,
        }

    h1, h2 = halves[1], halves[2]
    q1 = oblique_projection(
        onto=sum_subspaces(h1["minus_out"], h1["plus_in"], tol),
        along=sum_subspaces(h1["plus_out"], h1["minus_in"], tol),
        tol=tol,
    )
    target2 = sum_subspaces(h2["minus_out"], h2["plus_in"], tol)
    k_sub = intersect_subspaces(target2, pair.agreement, tol)
    q1_injective = (
        k_sub.dim == 0
        or linalg.rank_tol(q1 @ k_sub.basis, tol) == k_sub.dim
    )

    dim_minus_out1 = h1["minus_out"].dim
    dim_plus_in1 = h1["plus_in"].dim
    dim_minus_out2 = h2["minus_out"].dim
    dim_plus_in2 = h2["plus_in"].dim

    eig1_dp = h1["inside"].dim
    eig2_dp = h2["inside"].dim
    eig1_delta = gap_subspace(pair.op1, interval, tol).dim
    eig2_delta = gap_subspace(pair.op2, interval, tol).dim

    n, kappa = pair.n, pair.space.kappa_minus
    sig1_dp = subspace_inertia(pair.space, h1["inside"], tol).sig
    sig2_dp = subspace_inertia(pair.space, h2["inside"], tol).sig

    return WitnessReport(
        delta_prime=dp,
        dim_minus_out1=dim_minus_out1,
        dim_plus_in1=dim_plus_in1,
        dim_minus_out2=dim_minus_out2,
        dim_plus_in2=dim_plus_in2,
        dim_k=k_sub.dim,
        q1_injective_on_k=q1_injective,
        lower_bound_ok=k_sub.dim >= dim_minus_out2 + dim_plus_in2 - n,
        upper_bound_ok=k_sub.dim <= dim_minus_out1 + dim_plus_in1,
        eig1_delta_prime=eig1_dp,
        eig2_delta_prime=eig2_dp,
        eig1_delta=eig1_delta,
        eig2_delta=eig2_delta,
        chain_holds=eig2_dp <= n + 2 * kappa + eig1_delta,
        sig_chain_holds=sig2_dp - sig1_dp <= n,
    )
