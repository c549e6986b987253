"""System descriptions: generator sets and state points."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .affine import AffineGenerator, embed
from .algebra import KINDS, is_skew
from .errors import AssumptionConflict, InputError

__all__ = ["GeneratorSet", "StatePoint", "SPACES", "as_point", "default_space"]

SPACES = ("sphere", "euclidean")
_SPHERE_TOL = 1e-10


def default_space(kind):
    return "sphere" if kind == "skew" else "euclidean"


@dataclass(frozen=True)
class StatePoint:
    """A point of S^{n-1} or R^n.

    Sphere points are renormalized on construction; the zero vector is
    rejected there.
    """

    coords: np.ndarray
    space: str = "euclidean"

    def __post_init__(self):
        if self.space not in SPACES:
            raise InputError(f"unknown space {self.space!r}; expected one of {SPACES}")
        x = np.array(self.coords, dtype=float).reshape(-1)
        if x.size == 0:
            raise InputError("empty point")
        if not np.all(np.isfinite(x)):
            raise InputError("point has non-finite coordinates")
        if self.space == "sphere":
            norm = np.linalg.norm(x)
            if norm == 0.0:
                raise InputError("the origin is not on the sphere")
            if abs(norm - 1.0) > _SPHERE_TOL:
                x = x / norm
        x.setflags(write=False)
        object.__setattr__(self, "coords", x)

    @property
    def n(self):
        return self.coords.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)


def as_point(x, space="euclidean"):
    if isinstance(x, StatePoint):
        return x
    return StatePoint(np.asarray(x, dtype=float), space)


@dataclass
class GeneratorSet:
    """Drift and control generators of an induced bilinear system.

    ``kind`` selects the ambient algebra: ``"skew"`` (so(n) acting on the
    sphere), ``"affine"`` (se(n) acting on R^n, generators are
    :class:`AffineGenerator`) or ``"general"`` (gl(n)).  The assertion flags
    are None when undeclared.
    """

    n: int
    controls: list = field(default_factory=list)
    drift: object = None
    kind: str = "skew"
    compact: bool | None = None
    proper_action: bool | None = None
    drift_periodic: bool | None = None
    space: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if int(self.n) != self.n or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n}")
        self.n = int(self.n)
        if self.space is None:
            self.space = default_space(self.kind)
        if self.space not in SPACES:
            raise InputError(f"unknown space {self.space!r}")
        if self.kind == "skew" and self.space != "sphere":
            raise InputError("skew generators act on the unit sphere")
        if self.kind == "affine" and self.space != "euclidean":
            raise InputError("affine generators act on R^n")
        self.controls = [self._check(g, f"controls[{k}]") for k, g in enumerate(self.controls)]
        if self.drift is not None:
            self.drift = self._check(self.drift, "drift")
        if not self.controls and self.drift is None:
            raise InputError("need at least one control or a drift")

    def _check(self, g, path):
        if self.kind == "affine":
            if not isinstance(g, AffineGenerator):
                raise InputError("affine systems take AffineGenerator values", path)
            if g.n != self.n:
                raise InputError(f"generator acts on R^{g.n}, expected R^{self.n}", path)
            return g
        g = np.array(g, dtype=float)
        if g.shape != (self.n, self.n):
            raise InputError(f"shape {g.shape}, expected {(self.n, self.n)}", path)
        if not np.all(np.isfinite(g)):
            raise InputError("non-finite entries", path)
        if self.kind == "skew" and not is_skew(g):
            raise InputError("matrix is not skew-symmetric", path)
        return g

    @property
    def has_drift(self):
        return self.drift is not None

    @property
    def m(self):
        return len(self.controls)

    @property
    def generators(self):
        """Drift first (when present), then the controls."""
        return ([self.drift] if self.drift is not None else []) + list(self.controls)

    @property
    def matrices(self):
        """Generators as ambient matrices (homogeneous embedding for se(n))."""
        if self.kind == "affine":
            return [embed(g) for g in self.generators]
        return [np.array(g) for g in self.generators]

    @property
    def drift_matrix(self):
        if self.drift is None:
            return None
        return embed(self.drift) if self.kind == "affine" else self.drift

    @property
    def control_matrices(self):
        if self.kind == "affine":
            return [embed(g) for g in self.controls]
        return list(self.controls)

    def assertions(self):
        return {
            "compact": self.compact,
            "proper_action": self.proper_action,
            "drift_periodic": self.drift_periodic,
        }

    def check_assertions(self):
        """Raise :class:`AssumptionConflict` for flags the kind contradicts."""
        if self.kind == "affine" and self.compact:
            raise AssumptionConflict("SE(n) is not compact")
        if self.kind == "skew" and self.compact is False:
            raise AssumptionConflict("SO(n) is compact")
        if self.kind in ("skew", "affine") and self.proper_action is False:
            raise AssumptionConflict(f"the {self.kind} action is proper")
        if self.drift is None and self.drift_periodic:
            raise AssumptionConflict("drift_periodic asserted without a drift")

    def scaled(self, control_scales, drift_scale=1.0):
        """Copy with each generator multiplied by a nonzero factor."""
        def mul(g, c):
            if self.kind == "affine":
                return AffineGenerator(c * g.rotation, c * g.translation)
            return c * g

        return GeneratorSet(
            n=self.n,
            controls=[mul(g, c) for g, c in zip(self.controls, control_scales)],
            drift=None if self.drift is None else mul(self.drift, drift_scale),
            kind=self.kind,
            compact=self.compact,
            proper_action=self.proper_action,
            drift_periodic=self.drift_periodic,
            space=self.space,
        )
