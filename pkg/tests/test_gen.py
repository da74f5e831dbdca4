from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pontgap.errors import ResampleBudgetError, ValidationError
from pontgap.gen import (
    GenConfig,
    builtin_fixtures,
    random_operator,
    random_pair,
    random_real_spectrum_operator,
    random_space,
)
from pontgap.instancefile import InstanceRecord, dumps_instance
from pontgap.spectral import Interval, spectrum

DATA = Path(__file__).parent / "data"

dims = st.integers(min_value=1, max_value=6)
seeds = st.integers(min_value=0, max_value=2**31 - 1)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(dim=0, kappa_minus=0),
        dict(dim=3, kappa_minus=4),
        dict(dim=3, kappa_minus=-1),
        dict(dim=3, kappa_minus=1, pert_rank=4),
        dict(dim=3, kappa_minus=1, scale=0.0),
        dict(dim=3, kappa_minus=1, min_gap=-1.0),
    ],
)
def test_genconfig_rejects_bad_shapes(kwargs):
    with pytest.raises(ValidationError):
        GenConfig(**kwargs)


def test_genconfig_gap_default_tracks_scale():
    assert GenConfig(dim=2, kappa_minus=0).gap == pytest.approx(1e-3)
    assert GenConfig(dim=2, kappa_minus=0, scale=10.0).gap == pytest.approx(1e-2)
    assert GenConfig(dim=2, kappa_minus=0, min_gap=0.5).gap == 0.5


def test_random_space_diagonal_is_canonical():
    cfg = GenConfig(dim=2, kappa_minus=1, seed=9)
    space = random_space(cfg, diagonal=True)
    assert np.array_equal(space.gram, np.diag([1.0, -1.0]))


@given(dims, st.integers(min_value=0, max_value=6), seeds)
def test_random_space_hits_requested_inertia(d, kminus, seed):
    kminus = min(kminus, d)
    cfg = GenConfig(dim=d, kappa_minus=kminus, seed=seed)
    space = random_space(cfg)
    assert (space.kappa_plus, space.kappa_minus) == (d - kminus, kminus)
    again = random_space(cfg)
    assert np.array_equal(space.gram, again.gram)


@given(dims, seeds)
def test_random_operator_margins(d, seed):
    cfg = GenConfig(dim=d, kappa_minus=min(1, d), seed=seed)
    op = random_operator(random_space(cfg), cfg)
    values = np.array(list(spectrum(op).values()))
    real = values[np.abs(values.imag) < 1e-7]
    # accepted draws keep distinct eigenvalues separated by the config gap
    for i in range(len(real)):
        for j in range(i + 1, len(real)):
            assert abs(real[i] - real[j]) > cfg.gap * 0.999


@given(dims, st.integers(min_value=0, max_value=3), seeds)
def test_random_pair_rank_is_exact(d, n, seed):
    n = min(n, d)
    cfg = GenConfig(dim=d, kappa_minus=min(1, d), pert_rank=n, seed=seed)
    space = random_space(cfg)
    pair = random_pair(space, cfg)
    assert pair.n == n
    if n == 0:
        assert np.array_equal(pair.op1.matrix, pair.op2.matrix)
    assert np.linalg.matrix_rank(pair.op1.matrix - pair.op2.matrix, tol=1e-8) == n


def test_random_pair_is_deterministic():
    cfg = GenConfig(dim=5, kappa_minus=2, pert_rank=2, seed=77)
    space = random_space(cfg)
    p1 = random_pair(space, cfg)
    p2 = random_pair(space, cfg)
    assert np.array_equal(p1.op1.matrix, p2.op1.matrix)
    assert np.array_equal(p1.op2.matrix, p2.op2.matrix)


def test_resample_budget_exhausts_on_impossible_gap():
    cfg = GenConfig(dim=6, kappa_minus=1, seed=0, min_gap=50.0)
    space = random_space(cfg)
    with pytest.raises(ResampleBudgetError):
        random_operator(space, cfg)


def test_real_spectrum_operator_respects_bounds():
    cfg = GenConfig(dim=5, kappa_minus=2, seed=21)
    space = random_space(cfg)
    op = random_real_spectrum_operator(space, cfg, bounds=(-1.0, 1.0))
    values = sorted(spectrum(op).values(), key=lambda z: z.real)
    assert all(abs(v.imag) < 1e-7 for v in values)
    assert all(-1.0 < v.real < 1.0 for v in values)
    for lo, hi in zip(values, values[1:]):
        assert hi.real - lo.real > cfg.gap * 0.999


def test_real_spectrum_operator_impossible_packing():
    # five eigenvalues pairwise 0.5 apart cannot fit in a unit interval
    cfg = GenConfig(dim=5, kappa_minus=1, seed=0, min_gap=0.5)
    space = random_space(cfg)
    with pytest.raises(ResampleBudgetError):
        random_real_spectrum_operator(space, cfg, bounds=(0.0, 1.0))


def test_golden_instance_bytes():
    """Generated instances are frozen: seed 42, d=4, kappa=1, rank 1."""
    cfg = GenConfig(dim=4, kappa_minus=1, pert_rank=1, seed=42)
    space = random_space(cfg)
    pair = random_pair(space, cfg)
    record = InstanceRecord(
        gram=space.gram,
        a1=pair.op1.matrix,
        a2=pair.op2.matrix,
        intervals=[Interval(-np.inf, np.inf)],
        name="gen-seed42-d4-k1-n1",
    )
    assert dumps_instance(record) == (DATA / "gen_seed42.json").read_text()


def test_builtin_fixtures_literals():
    fix1, fix3 = builtin_fixtures()

    assert fix1.name == "example1"
    assert np.array_equal(fix1.pair.space.gram, np.diag([1.0, -1.0]))
    assert np.array_equal(
        fix1.pair.op1.matrix, np.array([[1.0, 1j], [1j, -1.0]])
    )
    assert np.array_equal(fix1.pair.op2.matrix, np.diag([0.5, 1.0]))
    assert fix1.interval == Interval(0.25, 2.0)
    assert fix1.expected == {
        "n": 1, "kappa": 1, "eig1": 0, "eig2": 2, "sig1": 0, "sig2": 0,
        "slack": 1,
    }

    assert fix3.name == "example3"
    assert np.array_equal(fix3.pair.space.gram, np.diag([-1.0, 1.0, 1.0]))
    assert fix3.pair.op1.matrix[0, 1] == 100j
    assert fix3.pair.op2.matrix[1, 1] == 400.0
    assert fix3.interval == Interval(0.0, np.inf)
    assert fix3.expected == {
        "n": 1, "kappa": 1, "eig1": 0, "eig2": 3, "sig1": 0, "sig2": 1,
        "slack": 0,
    }
