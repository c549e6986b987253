"""Exit criteria.  Each test prints one PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py``.
"""

import itertools
import math
import time

import numpy as np
import pytest

from liebilinear.affine import rank_at_affine
from liebilinear.algebra import bracket, lie_closure, vec
from liebilinear.fixtures import (
    bloch_system,
    random_affine_generators,
    random_skew_generators,
    random_skew_system,
    rotation_only_system,
    fixed_axis_b1,
    fixed_axis_b2,
    fixed_axis_system,
    translations_system,
    unicycle_system,
)
from liebilinear.graphcrit import EdgeSpec, is_connected, system_from_edges
from liebilinear.orbit import orbit_dim_estimate, sample_orbit
from liebilinear.rankcond import analyze, rank_at
from liebilinear.sim import ControlSchedule, run
from liebilinear.system import GeneratorSet

from oracles import direct_affine_closure_dim

EPS = np.finfo(float).eps
pytestmark = pytest.mark.acceptance


def _unit(rng, n):
    x = rng.standard_normal(n)
    return x / np.linalg.norm(x)


def criterion_1():
    t0 = time.perf_counter()
    h = lie_closure(fixed_axis_system())
    c = bracket(fixed_axis_b1(), fixed_axis_b2())
    expected = np.zeros((4, 4))
    expected[1, 3], expected[3, 1] = 1.0, -1.0
    coeffs = h.vectors() @ vec(c)
    in_span = np.allclose(h.vectors().T @ coeffs, vec(c), atol=1e-13)
    e = np.eye(4)
    ranks = [rank_at(h, e[k]) for k in range(3)]
    elapsed = time.perf_counter() - t0
    ok = (
        h.dim == 3
        and np.array_equal(c, expected)
        and in_span
        and ranks == [0, 2, 2]
        and elapsed < 1.0
    )
    return ok, f"dim={h.dim} ranks(e1,e2,e3)={ranks} in_span={in_span} {elapsed:.3f}s"


def _graph_vs_rank(spec, seed):
    rep = analyze(system_from_edges(spec), seed=seed)
    return rep.controllable == is_connected(spec)


def criterion_2():
    t0 = time.perf_counter()
    pairs = list(itertools.combinations(range(1, 5), 2))
    bad4 = sum(
        not _graph_vs_rank(EdgeSpec(4, [p for p, k in zip(pairs, mask) if k]), seed)
        for seed, mask in enumerate(itertools.product([0, 1], repeat=len(pairs)))
    )
    rng = np.random.default_rng(2024)
    bad = {4: bad4}
    for n in (5, 6):
        pairs_n = list(itertools.combinations(range(1, n + 1), 2))
        count = 0
        for k in range(500):
            mask = rng.random(len(pairs_n)) < rng.uniform(0.05, 0.6)
            spec = EdgeSpec(n, [p for p, m in zip(pairs_n, mask) if m])
            count += not _graph_vs_rank(spec, k)
        bad[n] = count
    elapsed = time.perf_counter() - t0
    ok = sum(bad.values()) == 0 and elapsed < 60.0
    return ok, f"disagreements n=4 (64 subsets): {bad[4]}, n=5: {bad[5]}, n=6: {bad[6]}; {elapsed:.1f}s"


def criterion_3():
    failures, checked = 0, 0
    for n in (3, 4, 5):
        rng = np.random.default_rng(300 + n)
        for k in range(50):
            gens = random_skew_system(n, rng)
            h = lie_closure(gens)
            x0 = _unit(rng, n)
            r0 = rank_at(h, x0)
            sample = sample_orbit(gens, x0, 100, seed=1000 * n + k)
            failures += any(rank_at(h, p) != r0 for p in sample.points)
            checked += 1
    return failures == 0, f"{checked} generator sets x 100 points, {failures} non-constant orbits"


def criterion_4():
    gens = fixed_axis_system()
    h = lie_closure(gens)
    rng = np.random.default_rng(4)
    worst, bars = 0.0, set()
    single = True
    for _ in range(20):
        k = int(rng.integers(5, 50))
        mesh = np.cumsum(np.r_[0.0, rng.uniform(0.01, 1.0, k)])
        sched = ControlSchedule(mesh, rng.uniform(-3, 3, (k, 2)))
        traj = run(gens, [0, 1, 0, 0], sched, oversample=2)
        worst = max(worst, float(np.abs(traj.states[:, 0]).max()))
        hist = {rank_at(h, x) for x in traj.states}
        single &= len(hist) == 1
        bars |= hist
    ok = worst <= 1e-9 and single
    return ok, f"max |x1| = {worst:.2e}, rank values seen {sorted(bars)}"


def criterion_5():
    gens = bloch_system()
    verdict = analyze(gens, probe=[0, 0, 1]).verdict
    traj = run(gens, [0, 0, 1], ControlSchedule.constant([1.0, -1.0], math.pi))
    pulse_err = float(np.abs(traj.final - [math.sin(math.pi), 0.0, math.cos(math.pi)]).max())
    rng = np.random.default_rng(5)
    k = 10_000
    long = run(gens, [0, 0, 1], ControlSchedule(np.linspace(0, 200, k + 1), rng.uniform(-2, 2, (k, 2))))
    drift = long.norm_drift()
    ok = verdict == "controllable" and pulse_err <= 1e-9 and drift <= 1e-9
    return ok, f"verdict={verdict} pi-pulse err={pulse_err:.1e} norm drift (1e4 steps)={drift:.1e}"


def criterion_6():
    notes = []
    t = analyze(translations_system(2), probe=[0.0, 0.0])
    ht = lie_closure(translations_system(2))
    rng = np.random.default_rng(6)
    everywhere = all(rank_at_affine(ht, x) == 2 for x in [np.zeros(2)] + list(rng.standard_normal((20, 2))))
    ok_t = t.verdict == "controllable" and t.rank_at_probe == 2 and everywhere
    notes.append(f"translations {t.verdict} rank2-everywhere={everywhere}")

    u = analyze(unicycle_system())
    ok_u = u.verdict == "controllable" and u.closure_dim == 3
    notes.append(f"unicycle {u.verdict} dim={u.closure_dim}")

    r = analyze(rotation_only_system(), probe=[0.0, 0.0])
    hr = lie_closure(rotation_only_system())
    generic = rank_at_affine(hr, rng.standard_normal(2))
    ok_r = r.verdict == "not_controllable" and r.orbit_dim == 0 and generic == 1
    notes.append(f"rotation {r.verdict} orbit_dim(0)={r.orbit_dim} generic={generic}")

    mismatches = 0
    for k in range(100):
        n = 1 + k % 4
        gens = random_affine_generators(n, rng)
        embedded = lie_closure(GeneratorSet(n=n, controls=gens, kind="affine")).dim
        mismatches += embedded != direct_affine_closure_dim([(g.rotation, g.translation) for g in gens])
    notes.append(f"two-path mismatches {mismatches}/100")
    return ok_t and ok_u and ok_r and mismatches == 0, "; ".join(notes)


def criterion_7():
    rng = np.random.default_rng(7)
    agree = 0
    for k in range(100):
        n = 3 + k % 3
        h = lie_closure(random_skew_system(n, rng))
        x = _unit(rng, n)
        agree += orbit_dim_estimate(h, x, seed=k) == rank_at(h, x)
    return agree >= 95, f"local PCA dimension equals rank on {agree}/100 trials"


def criterion_8():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 7))
        a, b, c = (rng.standard_normal((n, n)) for _ in range(3))
        j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        scale = np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c)
        worst = max(worst, np.linalg.norm(j) / (EPS * scale))
    changed = 0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        gens = random_skew_generators(n, rng)
        dim = lie_closure(gens, kind="skew").dim
        perm = rng.permutation(len(gens))
        mix = rng.standard_normal((len(gens), len(gens))) + 3 * np.eye(len(gens))
        mixed = np.einsum("kl,lij->kij", mix, np.array(gens)[perm])
        changed += lie_closure(list(mixed), kind="skew").dim != dim
    ok = worst <= 1e3 and changed == 0
    return ok, f"max Jacobi residual {worst:.1f} eps*scale; closure changed on {changed}/100 mixes"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def _report(k, fn):
    ok, detail = fn()
    return ok, f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, 9))
def test_criterion(k, capsys):
    ok, line = _report(k, CRITERIA[k - 1])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [_report(k, fn) for k, fn in enumerate(CRITERIA, start=1)]
    for _, line in results:
        print(line)
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
