"""Trajectories of induced bilinear systems under piecewise-constant controls.

On each interval the field ``B0 + sum u_i B_i`` is frozen, so the exact
solution is one matrix exponential.  Norm conservation on the sphere and
confinement to the orbit therefore hold to rounding, with no integrator
error on top.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import InputError, NumericalError
from .system import GeneratorSet, as_point

__all__ = ["ControlSchedule", "Trajectory", "run", "step"]


@dataclass
class ControlSchedule:
    """Breakpoints ``t_0 < ... < t_K`` and one control vector per interval."""

    mesh: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        mesh = np.asarray(self.mesh, dtype=float).reshape(-1)
        values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if mesh.size < 2:
            raise InputError("schedule mesh needs at least two breakpoints", "mesh")
        if not np.all(np.isfinite(mesh)) or np.any(np.diff(mesh) <= 0):
            raise InputError("mesh must be finite and strictly increasing", "mesh")
        if values.shape[0] != mesh.size - 1:
            raise InputError(
                f"{values.shape[0]} control values for {mesh.size - 1} intervals", "values"
            )
        if not np.all(np.isfinite(values)):
            raise InputError("control values must be finite", "values")
        self.mesh = mesh
        self.values = values

    @property
    def intervals(self):
        return self.mesh.size - 1

    @property
    def m(self):
        return self.values.shape[1]

    @classmethod
    def constant(cls, u, duration, pieces=1, t0=0.0):
        u = np.atleast_1d(np.asarray(u, dtype=float))
        mesh = np.linspace(t0, t0 + duration, pieces + 1)
        return cls(mesh, np.tile(u, (pieces, 1)))

    def reversed(self):
        """Time-reversed schedule with negated field, which undoes this one.

        With a drift, run it with ``drift_sign=-1`` as well.
        """
        dt = np.diff(self.mesh)[::-1]
        mesh = self.mesh[0] + np.concatenate([[0.0], np.cumsum(dt)])
        return ControlSchedule(mesh, -self.values[::-1])


@dataclass
class Trajectory:
    """States recorded at the breakpoints (and oversampled instants)."""

    times: np.ndarray
    states: np.ndarray
    schedule: ControlSchedule
    gens: GeneratorSet = field(repr=False)

    @property
    def final(self):
        return self.states[-1]

    def norm_drift(self):
        """Largest ``| ||x(t)|| - ||x(0)|| |`` over recorded states."""
        norms = np.linalg.norm(self.states, axis=1)
        return float(np.max(np.abs(norms - norms[0])))

    def to_csv(self, fh=None):
        out = fh if fh is not None else io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t"] + [f"x{k + 1}" for k in range(self.states.shape[1])])
        for t, x in zip(self.times, self.states):
            w.writerow([repr(float(t))] + [repr(float(c)) for c in x])
        if fh is None:
            return out.getvalue()
        return None


def _field(gens, u, drift_sign=1.0):
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if u.shape[0] != gens.m:
        raise InputError(f"got {u.shape[0]} controls for {gens.m} generators")
    if not np.all(np.isfinite(u)):
        raise InputError("controls must be finite")
    mats = gens.control_matrices
    size = mats[0].shape[0] if mats else gens.drift_matrix.shape[0]
    a = np.zeros((size, size))
    if gens.has_drift:
        a += drift_sign * gens.drift_matrix
    for ui, b in zip(u, mats):
        a += ui * b
    return a


def _apply(e, x):
    if e.shape[0] == x.shape[0] + 1:
        return e[:-1, :-1] @ x + e[:-1, -1]
    return e @ x


def step(gens, u, dt, x, drift_sign=1.0):
    """``exp(dt (B0 + sum u_i B_i)) x`` (homogeneous coordinates for se(n))."""
    if not dt > 0:
        raise InputError(f"step size must be positive, got {dt}")
    x = np.asarray(getattr(x, "coords", x), dtype=float).reshape(-1)
    y = _apply(expm(dt * _field(gens, u, drift_sign)), x)
    if not np.all(np.isfinite(y)):
        raise NumericalError("step produced a non-finite state")
    return y


def run(gens, x0, schedule, oversample=1, drift_sign=1.0):
    """Fold :func:`step` over the schedule.

    Parameters
    ----------
    gens : GeneratorSet
    x0 : array_like or StatePoint
    schedule : ControlSchedule
    oversample : int
        Record ``oversample`` equally spaced states per interval instead of
        only the breakpoints.  Sub-steps reuse one exponential, so the
        breakpoint states agree with the default run to rounding.
    drift_sign : float
        Multiplies the drift; ``-1`` runs the backward-time system.

    Returns
    -------
    Trajectory
    """
    if oversample < 1:
        raise InputError("oversample must be a positive integer")
    x = as_point(x0, gens.space).coords
    if x.shape[0] != gens.n:
        raise InputError(f"initial state has dimension {x.shape[0]}, expected {gens.n}")
    if schedule.m != gens.m:
        raise InputError(f"schedule has {schedule.m} controls, system has {gens.m}")
    times = [schedule.mesh[0]]
    states = [x]
    for k in range(schedule.intervals):
        t0, t1 = schedule.mesh[k], schedule.mesh[k + 1]
        h = (t1 - t0) / oversample
        e = expm(h * _field(gens, schedule.values[k], drift_sign))
        for j in range(1, oversample + 1):
            x = _apply(e, x)
            if not np.all(np.isfinite(x)):
                raise NumericalError(f"non-finite state in interval {k}")
            times.append(t1 if j == oversample else t0 + j * h)
            states.append(x)
    return Trajectory(np.array(times), np.array(states), schedule, gens)
