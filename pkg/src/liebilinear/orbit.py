"""Orbit sampling and numerical checks of orbit geometry.

Points of the orbit ``H(x0)`` are produced by random words of exact
exponential flows ``exp(t B) x``.  On top of that sampler:

* :func:`verify_rank_constancy` checks that the rank of the algebra is the
  same at every sampled orbit point;
* :func:`estimate_local_dim` recovers the orbit dimension from the point
  cloud alone (local PCA), independently of any rank computation.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .algebra import LieBasis
from .errors import NumericalError, SamplingError
from .rankcond import rank_at
from .system import GeneratorSet, StatePoint, as_point

__all__ = [
    "OrbitSample",
    "estimate_local_dim",
    "flow",
    "local_orbit_sample",
    "orbit_dim_estimate",
    "sample_orbit",
    "verify_rank_constancy",
]

DEFAULT_HORIZON = 2 * np.pi
DEFAULT_WORD_LENGTH = 12
DEFAULT_PCA_RTOL = 1e-3
MIN_LOCAL_POINTS = 10


def _coords(x):
    return np.asarray(getattr(x, "coords", x), dtype=float).reshape(-1)


def _space_of(x, kind):
    if isinstance(x, StatePoint):
        return x.space
    return "sphere" if kind == "skew" else "euclidean"


def flow(g, t, x):
    """``exp(t g) x``.

    ``g`` is an n x n matrix, or an (n+1) x (n+1) homogeneous matrix acting
    on ``(x, 1)`` when ``x`` has length n.
    """
    g = np.asarray(g, dtype=float)
    x = _coords(x)
    e = expm(t * g)
    if g.shape[0] == x.shape[0] + 1:
        y = e[:-1, :-1] @ x + e[:-1, -1]
    else:
        y = e @ x
    if not np.all(np.isfinite(y)):
        raise NumericalError(f"flow produced non-finite state (t={t})")
    return y


def _generators_of(gens):
    """(matrices, kind, n) for a GeneratorSet, LieBasis or matrix list."""
    if isinstance(gens, GeneratorSet):
        return gens.matrices, gens.kind, gens.n
    if isinstance(gens, LieBasis):
        return gens.matrices, gens.kind, gens.n
    mats = [np.asarray(g, dtype=float) for g in gens]
    return mats, "general", mats[0].shape[0]


@dataclass
class OrbitSample:
    """Points of one orbit with the words that produced them."""

    base: StatePoint
    points: np.ndarray
    words: list = field(default_factory=list)
    seed: int = 0

    def __len__(self):
        return self.points.shape[0]

    def to_csv(self, fh=None):
        """One point per row, columns ``x1..xn``.  Returns the text if no file."""
        out = fh if fh is not None else io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow([f"x{k + 1}" for k in range(self.points.shape[1])])
        for p in self.points:
            w.writerow([repr(float(c)) for c in p])
        if fh is None:
            return out.getvalue()
        return None


def sample_orbit(
    gens,
    x0,
    count,
    horizon=DEFAULT_HORIZON,
    seed=0,
    word_length=DEFAULT_WORD_LENGTH,
):
    """Sample ``count`` points of the orbit through ``x0``.

    Each point is ``exp(t_L B_{i_L}) ... exp(t_1 B_{i_1}) x0`` for a word of
    random length ``L`` in ``1..word_length``, generator indices uniform and
    times uniform in ``[-horizon, horizon]``.  Word ``k`` draws from its own
    stream spawned from ``seed``, so the result does not depend on how the
    words are scheduled.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    mats, kind, _ = _generators_of(gens)
    base = as_point(x0, _space_of(x0, kind))
    x = base.coords
    streams = np.random.SeedSequence(seed).spawn(count)
    points = np.empty((count, x.shape[0]))
    words = []
    for k, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        length = int(rng.integers(1, word_length + 1))
        idx = rng.integers(len(mats), size=length)
        times = rng.uniform(-horizon, horizon, size=length)
        y = x
        for i, t in zip(idx, times):
            y = flow(mats[i], t, y)
        points[k] = y
        words.append([(int(i), float(t)) for i, t in zip(idx, times)])
    return OrbitSample(base=base, points=points, words=words, seed=seed)


def verify_rank_constancy(basis, sample, tol=None):
    """Rank at every sampled point.

    Returns
    -------
    dict
        ``constant`` (bool), ``ranks`` (histogram ``{rank: count}``) and
        ``rank`` (the common value, or None).
    """
    ranks = Counter(rank_at(basis, p, tol=tol) for p in sample.points)
    constant = len(ranks) == 1
    return {
        "constant": constant,
        "ranks": dict(sorted(ranks.items())),
        "rank": next(iter(ranks)) if constant else None,
    }


def estimate_local_dim(sample, center, radius=0.1, rtol=DEFAULT_PCA_RTOL):
    """Dimension of the point cloud near ``center`` by principal components.

    Points within ``radius`` of ``center`` are centered at their mean and the
    singular values above ``rtol * sigma_max`` are counted.  Curvature shows
    up at scale ``spread**2``, so the cloud should be much tighter than
    ``rtol`` relative to its own extent (see :func:`local_orbit_sample`).
    """
    c = _coords(center)
    pts = np.asarray(sample.points, dtype=float)
    near = pts[np.linalg.norm(pts - c, axis=1) <= radius]
    if near.shape[0] < MIN_LOCAL_POINTS:
        raise SamplingError(
            f"only {near.shape[0]} sample points within {radius} of the center; "
            f"need {MIN_LOCAL_POINTS}"
        )
    s = np.linalg.svd(near - near.mean(axis=0), compute_uv=False)
    # Rounding floor: flows of a fixed point agree only to a few ulps.
    floor = 1e3 * np.finfo(float).eps * max(1.0, np.linalg.norm(c))
    if s[0] <= floor:
        return 0
    return int(np.count_nonzero(s > max(rtol * s[0], floor)))


def local_orbit_sample(basis, center, count=200, spread=1e-4, seed=0, word_length=4):
    """Orbit points close to ``center`` from short flows of the basis elements.

    Using every basis element (not only the generators) makes all tangent
    directions first order in ``spread``.
    """
    return sample_orbit(basis, center, count, horizon=spread, seed=seed, word_length=word_length)


def orbit_dim_estimate(basis, center, count=200, spread=1e-4, radius=0.1, seed=0):
    """Local PCA dimension of the orbit of ``basis`` through ``center``."""
    if basis.dim == 0:
        return 0
    sample = local_orbit_sample(basis, center, count=count, spread=spread, seed=seed)
    return estimate_local_dim(sample, center, radius=radius)
