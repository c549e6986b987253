"""Reference systems and random generator families.

The named systems are the standard worked examples: the rank-deficient pair
on S^3, the Bloch equations on S^2 and a few planar rigid-motion systems.
The ``random_*`` helpers produce generator sets with a known structure
(generic, block, torus, ...) for property tests and demos.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import special_ortho_group

from .affine import AffineGenerator
from .graphcrit import omega
from .system import GeneratorSet

OMEGA_X = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
OMEGA_Y = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
OMEGA_Z = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


def fixed_axis_b1():
    return omega(4, 2, 3)


def fixed_axis_b2():
    return omega(4, 3, 4)


def fixed_axis_system():
    """Two planar rotations in so(4) that leave e_1 fixed."""
    return GeneratorSet(n=4, controls=[fixed_axis_b1(), fixed_axis_b2()], kind="skew")


def bloch_system(larmor=1.0):
    """``x' = (w0 Oz + u Oy + v Oz) x`` on S^2."""
    drift = larmor * OMEGA_Z if larmor else None
    return GeneratorSet(n=3, controls=[OMEGA_Y, OMEGA_Z], drift=drift, kind="skew")


def full_so_basis(n):
    return [omega(n, i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def full_so_system(n):
    return GeneratorSet(n=n, controls=full_so_basis(n), kind="skew")


def translations_system(n=2):
    """Pure translations along every axis of R^n."""
    return GeneratorSet(
        n=n,
        controls=[AffineGenerator.translation_only(np.eye(n)[k]) for k in range(n)],
        kind="affine",
    )


def unicycle_system():
    """Rotation about the origin plus one translation in the plane."""
    return GeneratorSet(
        n=2,
        controls=[
            AffineGenerator.rotation_only(omega(2, 1, 2)),
            AffineGenerator.translation_only([1.0, 0.0]),
        ],
        kind="affine",
    )


def rotation_only_system():
    return GeneratorSet(
        n=2, controls=[AffineGenerator.rotation_only(omega(2, 1, 2))], kind="affine"
    )


def random_skew(n, rng):
    a = rng.standard_normal((n, n))
    return a - a.T


def random_rotation(n, rng):
    if n == 1:
        return np.ones((1, 1))
    return special_ortho_group.rvs(n, random_state=rng)


def _conjugate(mats, rng):
    r = random_rotation(mats[0].shape[0], rng)
    return [r @ m @ r.T for m in mats]


def _block(n, k, rng):
    m = np.zeros((n, n))
    m[:k, :k] = random_skew(k, rng)
    m[k:, k:] = random_skew(n - k, rng)
    return m


def _torus(n, rng):
    m = np.zeros((n, n))
    for p in range(n // 2):
        w = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        m[2 * p, 2 * p + 1] = w
        m[2 * p + 1, 2 * p] = -w
    return m


FAMILIES = ("generic", "block", "torus", "single", "edges")


def random_skew_generators(n, rng, family=None):
    """Random control matrices in so(n) drawn from a structured family.

    ``generic`` pairs almost surely generate so(n); ``block`` stays inside a
    conjugate of so(k) + so(n-k); ``torus`` commutes; ``single`` is one
    matrix; ``edges`` is a random set of standard-basis generators.
    """
    family = family or FAMILIES[rng.integers(len(FAMILIES))]
    if family == "generic":
        return [random_skew(n, rng) for _ in range(2)]
    if family == "block":
        k = int(rng.integers(1, n))
        return _conjugate([_block(n, k, rng) for _ in range(int(rng.integers(1, 4)))], rng)
    if family == "torus":
        return _conjugate([_torus(n, rng) for _ in range(int(rng.integers(1, 3)))], rng)
    if family == "single":
        return [random_skew(n, rng)]
    if family == "edges":
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        count = int(rng.integers(1, len(pairs) + 1))
        pick = rng.choice(len(pairs), size=count, replace=False)
        return [rng.uniform(0.5, 2.0) * omega(n, *pairs[p]) for p in sorted(pick)]
    raise ValueError(f"unknown family {family!r}")


def random_skew_system(n, rng, family=None):
    return GeneratorSet(n=n, controls=random_skew_generators(n, rng, family), kind="skew")


def random_affine_generators(n, rng, count=None):
    """Random se(n) elements; some with zero rotation or zero translation."""
    count = count or int(rng.integers(1, 4))
    out = []
    for _ in range(count):
        style = rng.integers(3)
        rot = random_skew(n, rng) if style != 1 else np.zeros((n, n))
        mu = rng.standard_normal(n) if style != 2 else np.zeros(n)
        out.append(AffineGenerator(rot, mu))
    return out
