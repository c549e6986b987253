import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liebilinear.algebra import lie_closure
from liebilinear.errors import AssumptionConflict, InputError
from liebilinear.fixtures import (
    OMEGA_Z,
    bloch_system,
    full_so_system,
    random_rotation,
    random_skew_generators,
    random_skew_system,
    rotation_only_system,
    fixed_axis_system,
    translations_system,
    unicycle_system,
)
from liebilinear.graphcrit import omega
from liebilinear.orbit import sample_orbit
from liebilinear.rankcond import (
    AnalysisReport,
    analyze,
    check_group_larc,
    fixed_points,
    rank_at,
    required_rank,
)
from liebilinear.system import GeneratorSet

from oracles import exact_rank_at

seeds = st.integers(0, 2**32 - 1)
E = np.eye(4)


@pytest.mark.parametrize("k,expected", [(0, 0), (1, 2), (2, 2), (3, 2)])
def test_rank_fixed_axis_basis_points(k, expected):
    h = lie_closure(fixed_axis_system())
    assert rank_at(h, E[k]) == expected
    assert exact_rank_at(fixed_axis_system().matrices, E[k]) == expected


def test_rank_rejects_origin_on_sphere():
    h = lie_closure(fixed_axis_system())
    with pytest.raises(InputError):
        rank_at(h, np.zeros(4))


def test_rank_general_kind_at_origin_is_zero():
    h = lie_closure([np.eye(2), omega(2, 1, 2)])
    assert rank_at(h, [0.0, 0.0]) == 0
    assert rank_at(h, [0.5, 2.0]) == 2


def test_required_rank():
    assert required_rank("sphere", 4) == 3
    assert required_rank("euclidean", 4) == 4
    with pytest.raises(InputError):
        required_rank("torus", 2)


def test_group_larc():
    assert check_group_larc(lie_closure(full_so_system(4)), full_so_system(4))
    assert not check_group_larc(lie_closure(fixed_axis_system()), fixed_axis_system())


def test_fixed_points_fixed_axis_is_e1():
    pts = fixed_points(lie_closure(fixed_axis_system()))
    assert len(pts) == 1
    np.testing.assert_allclose(pts[0], E[0], atol=1e-12)


def test_fixed_points_affine_rotation_is_origin():
    pts = fixed_points(lie_closure(rotation_only_system()))
    assert len(pts) == 1
    np.testing.assert_allclose(pts[0], [0.0, 0.0], atol=1e-12)


def test_analyze_fixed_axis():
    rep = analyze(fixed_axis_system(), probe=E[1])
    assert rep.verdict == "not_controllable"
    assert (rep.rank_at_probe, rep.required_rank, rep.closure_dim, rep.ambient_dim) == (2, 3, 3, 6)
    assert rep.group_larc is False
    assert rep.fixed_points == [[1.0, 0.0, 0.0, 0.0]]
    assert any("fixed point" in d for d in rep.diagnostics)


def test_analyze_fixed_axis_at_fixed_point_reports_zero_orbit():
    rep = analyze(fixed_axis_system(), probe=E[0])
    assert rep.verdict == "not_controllable"
    assert rep.orbit_dim == 0
    assert max(rep.probe_ranks) == 2


def test_analyze_bloch_controllable():
    rep = analyze(bloch_system(), probe=[0, 0, 1])
    assert rep.verdict == "controllable" and rep.controllable
    assert rep.rank_at_probe == 2 and rep.closure_dim == 3 and rep.group_larc


def test_analyze_se2_fixtures():
    rep = analyze(translations_system(2), probe=[0.0, 0.0])
    assert rep.verdict == "controllable" and rep.rank_at_probe == 2
    assert set(rep.probe_ranks) == {2}
    rep = analyze(unicycle_system())
    assert rep.verdict == "controllable" and rep.closure_dim == 3
    rep = analyze(rotation_only_system(), probe=[0.0, 0.0])
    assert rep.verdict == "not_controllable"
    assert rep.orbit_dim == 0 and rep.probe_ranks[1:] == [1, 1, 1]


@pytest.mark.parametrize("n", range(2, 9))
def test_full_so_basis_controllable(n):
    rep = analyze(full_so_system(n), seed=n)
    assert rep.verdict == "controllable"
    assert rep.closure_dim == n * (n - 1) // 2


def test_non_compact_drift_is_inconclusive():
    # x' = x + u Omega x has full rank off the origin, yet |x| only grows.
    gens = GeneratorSet(n=2, controls=[omega(2, 1, 2)], drift=np.eye(2), kind="general",
                        proper_action=True)
    rep = analyze(gens, probe=[1.0, 0.0])
    assert rep.rank_at_probe == 2
    assert rep.verdict == "inconclusive"
    gens.drift_periodic = True
    # Declared periodic, the (false) assertion is taken at face value.
    assert analyze(gens, probe=[1.0, 0.0]).verdict == "controllable"


def test_general_kind_without_properness_is_inconclusive():
    gens = GeneratorSet(n=2, controls=[np.eye(2), omega(2, 1, 2)], kind="general")
    assert analyze(gens, probe=[1.0, 1.0]).verdict == "inconclusive"
    gens.proper_action = True
    assert analyze(gens, probe=[1.0, 1.0]).verdict == "controllable"


def test_skew_drift_is_fine():
    rep = analyze(bloch_system(larmor=3.0))
    assert rep.verdict == "controllable"


@pytest.mark.parametrize(
    "gens",
    [
        lambda: GeneratorSet(n=2, controls=translations_system().controls, kind="affine",
                             compact=True),
        lambda: GeneratorSet(n=3, controls=[OMEGA_Z], compact=False),
        lambda: GeneratorSet(n=3, controls=[OMEGA_Z], proper_action=False),
        lambda: GeneratorSet(n=3, controls=[OMEGA_Z], drift_periodic=True),
    ],
)
def test_contradictory_assertions_raise(gens):
    with pytest.raises(AssumptionConflict):
        analyze(gens())


def test_probe_dimension_mismatch():
    with pytest.raises(InputError):
        analyze(fixed_axis_system(), probe=[1.0, 0.0, 0.0])


def test_report_round_trip():
    rep = analyze(fixed_axis_system(), probe=E[2], seed=7)
    back = AnalysisReport.from_dict(rep.to_dict())
    assert back == rep


def test_analyze_is_deterministic_in_seed():
    a = analyze(random_skew_system(5, np.random.default_rng(3)), seed=11)
    b = analyze(random_skew_system(5, np.random.default_rng(3)), seed=11)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(seed=seeds, n=st.integers(3, 5))
def test_rank_constant_along_orbits(seed, n):
    rng = np.random.default_rng(seed)
    gens = random_skew_system(n, rng)
    h = lie_closure(gens)
    x0 = rng.standard_normal(n)
    x0 /= np.linalg.norm(x0)
    r0 = rank_at(h, x0)
    sample = sample_orbit(gens, x0, 30, seed=seed % 997)
    assert all(rank_at(h, p) == r0 for p in sample.points)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, n=st.integers(3, 5))
def test_rank_equivariant_under_rotation(seed, n):
    rng = np.random.default_rng(seed)
    gens = random_skew_generators(n, rng)
    r = random_rotation(n, rng)
    h = lie_closure(gens, kind="skew")
    hr = lie_closure([r @ g @ r.T for g in gens], kind="skew")
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    assert rank_at(h, x) == rank_at(hr, r @ x)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, n=st.integers(3, 5))
def test_verdict_invariant_under_rescaling(seed, n):
    rng = np.random.default_rng(seed)
    gens = random_skew_system(n, rng)
    scales = rng.uniform(0.1, 10.0, gens.m) * rng.choice([-1, 1], gens.m)
    probe = rng.standard_normal(n)
    a = analyze(gens, probe=probe, seed=1)
    b = analyze(gens.scaled(scales), probe=probe, seed=1)
    assert (a.verdict, a.probe_ranks, a.closure_dim) == (b.verdict, b.probe_ranks, b.closure_dim)


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=st.integers(3, 4))
def test_rank_matches_exact_oracle(seed, n):
    # Integer generators keep the exact computation meaningful.
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(2):
        a = np.triu(rng.integers(-2, 3, (n, n)), 1).astype(float)
        mats.append(a - a.T)
    mats = [m for m in mats if np.any(m)]
    if not mats:
        return
    x = rng.integers(-3, 4, n).astype(float)
    if not np.any(x):
        x[0] = 1.0
    assert rank_at(lie_closure(mats, kind="skew"), x) == exact_rank_at(mats, x)
