"""Rank of a Lie algebra at a point and the single-point controllability test.

For a proper action the rank of the generated algebra is constant along
each orbit and equals the orbit's dimension, so comparing it with the
dimension of the state space at one generic point decides transitivity.
:func:`analyze` turns that into a verdict and is explicit about which
hypotheses the verdict rests on.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import null_space

from .affine import field_rows, rank_at_affine
from .algebra import (
    ambient_algebra_dim,
    field_tolerance,
    lie_closure,
    resolve_tolerance,
    span_dim,
)
from .errors import InputError
from .system import GeneratorSet, StatePoint, as_point

__all__ = [
    "AnalysisReport",
    "analyze",
    "check_group_larc",
    "fields_at",
    "fixed_points",
    "random_point",
    "rank_at",
    "required_rank",
]

VERDICTS = ("controllable", "not_controllable", "inconclusive")
EXTRA_PROBES = 3


def _coords(x):
    return np.asarray(getattr(x, "coords", x), dtype=float).reshape(-1)


def fields_at(basis, x):
    """Rows ``A_k x`` (or ``A_k x + mu_k``) for every basis element."""
    x = _coords(x)
    if basis.kind == "affine":
        return field_rows(basis.elements, x)
    if x.shape[0] != basis.n:
        raise InputError(f"point has dimension {x.shape[0]}, expected {basis.n}")
    return basis.elements @ x


def rank_at(basis, x, tol=None):
    """Dimension of ``{A x : A in h}`` for the algebra spanned by ``basis``.

    Without ``tol`` the threshold is the larger of the usual
    ``max_dim * eps * sigma_max`` and a multiple of the basis' own admission
    tolerance (see :func:`field_tolerance`).

    Examples
    --------
    >>> from liebilinear.fixtures import fixed_axis_system
    >>> from liebilinear.algebra import lie_closure
    >>> h = lie_closure(fixed_axis_system())
    >>> rank_at(h, [1, 0, 0, 0]), rank_at(h, [0, 1, 0, 0])
    (0, 2)
    """
    if basis.kind == "affine":
        return rank_at_affine(basis, x, tol=tol)
    coords = _coords(x)
    if tol is None:
        tol = field_tolerance(basis, scale=float(np.linalg.norm(coords)))
    if basis.kind == "skew" and not np.any(coords):
        raise InputError("the origin is excluded from the state space of a skew system")
    if basis.dim == 0:
        return 0
    return span_dim(fields_at(basis, coords), tol=tol)


def required_rank(space, n):
    """Dimension of the state space: n-1 on the sphere, n on R^n."""
    if space == "sphere":
        return n - 1
    if space == "euclidean":
        return n
    raise InputError(f"unknown space {space!r}")


def check_group_larc(basis, gens):
    """True iff the generated algebra is the whole ambient algebra.

    This is the group-level rank condition; it speaks about controllability
    on the group itself only when the group is compact (SO(n), or a general
    system with ``compact`` asserted).
    """
    return basis.dim == ambient_algebra_dim(gens.kind, gens.n)


def random_point(space, n, rng):
    """Uniform on the sphere, standard Gaussian on R^n."""
    x = rng.standard_normal(n)
    if space == "sphere":
        return StatePoint(x / np.linalg.norm(x), "sphere")
    return StatePoint(x, "euclidean")


def fixed_points(basis, tol=None):
    """Basis of the common zero set of the fields of ``basis``.

    For linear kinds this is the common kernel of the basis matrices
    (returned as unit vectors, sign fixed so the largest entry is positive).
    For se(n) the zero set is affine; one point per kernel direction of the
    homogeneous matrices with a nonzero last coordinate is returned.
    """
    if basis.dim == 0:
        return []
    if tol is None:
        tol = field_tolerance(basis)
    stacked = basis.elements.reshape(-1, basis.elements.shape[-1])
    s = np.linalg.svd(stacked, compute_uv=False)
    rcond = resolve_tolerance(tol, s[0], stacked.shape) / s[0] if s[0] > 0 else None
    kernel = null_space(stacked, rcond=rcond).T
    out = []
    if basis.kind == "affine":
        n = basis.n
        for v in kernel:
            if abs(v[n]) > 1e-8:
                out.append(v[:n] / v[n])
        return out
    for v in kernel:
        k = int(np.argmax(np.abs(v)))
        out.append(v * np.sign(v[k]))
    return out


@dataclass
class AnalysisReport:
    """Outcome of :func:`analyze`.

    ``rank_at_probe`` is the rank at the (first) probe point and equals the
    dimension of the orbit through it.  ``probe_ranks`` lists the ranks at
    the probe and the extra random points; the sufficiency test uses their
    maximum.
    """

    verdict: str
    rank_at_probe: int
    probe_point: list
    required_rank: int
    orbit_dim: int
    closure_dim: int
    ambient_dim: int
    kind: str
    space: str
    n: int
    criteria_used: list = field(default_factory=list)
    assumptions: dict = field(default_factory=dict)
    diagnostics: list = field(default_factory=list)
    probe_ranks: list = field(default_factory=list)
    fixed_points: list = field(default_factory=list)
    group_larc: bool | None = None
    seed: int = 0

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    @property
    def controllable(self):
        return self.verdict == "controllable"


def _mode(gens):
    """Which directions of the rank test are licensed for ``gens``.

    Returns ``(sufficiency, necessity, notes)``.
    """
    notes = []
    proper = gens.kind in ("skew", "affine") or bool(gens.proper_action) or bool(gens.compact)
    if gens.kind == "skew":
        notes.append("SO(n) is compact; its action on the sphere is proper")
    elif gens.kind == "affine":
        notes.append("the SE(n) action on R^n is proper")
    elif gens.compact:
        notes.append("compact group asserted; compact actions are proper")
    elif gens.proper_action:
        notes.append("proper action asserted")
    else:
        notes.append("action not known to be proper; full rank is not sufficient")

    drift_ok = True
    if gens.has_drift:
        if gens.kind == "skew" or gens.compact:
            notes.append("drift on a compact group")
        elif gens.drift_periodic:
            notes.append("drift flow asserted periodic")
        else:
            drift_ok = False
            notes.append(
                "drift on a non-compact group without a periodicity assertion; "
                "full rank only certifies accessibility"
            )
    # The fundamental-group hypothesis holds for every built-in space: R^n and
    # S^{n-1}, n >= 3, are simply connected; on S^1 a controllable system
    # trivially has rank 1.
    sufficiency = proper and drift_ok
    necessity = drift_ok
    return sufficiency, necessity, notes


def analyze(gens, probe=None, seed=0, tol=None):
    """Decide controllability of an induced bilinear system.

    Parameters
    ----------
    gens : GeneratorSet
    probe : array_like or StatePoint, optional
        Point at which the rank is reported.  Drawn from ``seed`` when
        omitted.  The rank is also evaluated at three further random points
        so that a non-generic probe cannot hide a full-rank orbit.
    seed : int
    tol : None, float or callable
        Rank tolerance policy forwarded to the closure and rank routines.

    Returns
    -------
    AnalysisReport
    """
    if not isinstance(gens, GeneratorSet):
        raise InputError("analyze expects a validated GeneratorSet")
    gens.check_assertions()
    basis = lie_closure(gens, tol=tol)
    space, n = gens.space, gens.n
    need = required_rank(space, n)

    rng = np.random.default_rng(seed)
    drawn = [random_point(space, n, rng) for _ in range(EXTRA_PROBES + 1)]
    if probe is None:
        points = drawn
    else:
        points = [as_point(probe, space)] + drawn[1:]
        if points[0].n != n:
            raise InputError(f"probe has dimension {points[0].n}, expected {n}")
    ranks = [rank_at(basis, p, tol=tol) for p in points]
    best = max(ranks)

    sufficiency, necessity, notes = _mode(gens)
    diagnostics = list(notes)
    criteria = ["single_point_rank"]
    larc = None
    if gens.kind == "skew" or gens.compact:
        larc = check_group_larc(basis, gens)
        criteria.append("group_larc")
        diagnostics.append(
            "generated algebra is the full ambient algebra"
            if larc
            else f"generated algebra has dimension {basis.dim} of {ambient_algebra_dim(gens.kind, n)}"
        )

    if len(set(ranks)) > 1:
        diagnostics.append(
            f"rank varies across sampled points {ranks}; the points lie on different orbits"
        )

    if best == need:
        verdict = "controllable" if sufficiency else "inconclusive"
    elif necessity:
        verdict = "not_controllable"
    else:
        verdict = "inconclusive"

    fixed = fixed_points(basis, tol=tol)
    if space == "sphere":
        fixed = [f for f in fixed if np.linalg.norm(f) > 0]
    if fixed:
        diagnostics.append(f"{len(fixed)} fixed point(s) of the generated group")
    if verdict == "not_controllable":
        diagnostics.append(
            f"the controllable submanifold through the probe is its orbit, of dimension {ranks[0]}"
        )

    return AnalysisReport(
        verdict=verdict,
        rank_at_probe=int(ranks[0]),
        probe_point=[float(c) for c in points[0].coords],
        required_rank=need,
        orbit_dim=int(ranks[0]),
        closure_dim=basis.dim,
        ambient_dim=ambient_algebra_dim(gens.kind, n),
        kind=gens.kind,
        space=space,
        n=n,
        criteria_used=criteria,
        assumptions=gens.assertions(),
        diagnostics=diagnostics,
        probe_ranks=[int(r) for r in ranks],
        fixed_points=[[float(c) for c in f] for f in fixed],
        group_larc=larc,
        seed=int(seed),
    )
