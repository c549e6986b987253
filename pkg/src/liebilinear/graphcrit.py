"""Graph criterion for systems built from standard-basis generators.

A system whose generators are ``Omega_ij = E_ij - E_ji`` is controllable on
the sphere exactly when the graph with one edge ``(i, j)`` per generator
(drift included) is connected.  Isolated vertices ``v_k`` give points
``e_k`` fixed by the whole generated group.

Indices are 1-based throughout, as in the matrix notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .system import GeneratorSet, StatePoint

__all__ = [
    "EdgeSpec",
    "components",
    "fixed_points",
    "is_connected",
    "omega",
    "system_from_edges",
]


def omega(n, i, j):
    """``E_ij - E_ji``: +1 at (i, j), -1 at (j, i), 1-based.

    Note the sign: ``omega(3, 2, 1)`` has +1 at (2, 1), which is the usual
    rotation generator about the z-axis.
    """
    if i == j:
        raise InputError(f"omega needs distinct indices, got ({i}, {j})")
    if not (1 <= i <= n and 1 <= j <= n):
        raise InputError(f"indices ({i}, {j}) out of range 1..{n}")
    out = np.zeros((n, n))
    out[i - 1, j - 1] = 1.0
    out[j - 1, i - 1] = -1.0
    return out


@dataclass
class EdgeSpec:
    """Vertex count and edge list; pairs are normalized to ``i < j``."""

    n: int
    edges: list = field(default_factory=list)
    drift: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"vertex count must be positive, got {self.n}")
        self.edges = [self._norm(e, f"edges[{k}]") for k, e in enumerate(self.edges)]
        if self.drift is not None:
            self.drift = self._norm(self.drift, "drift")

    def _norm(self, e, path):
        try:
            i, j = (int(v) for v in e)
        except (TypeError, ValueError):
            raise InputError("edge must be a pair of integers", path) from None
        if i == j:
            raise InputError(f"self-loop ({i}, {j})", path)
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise InputError(f"edge ({i}, {j}) out of range 1..{self.n}", path)
        return (min(i, j), max(i, j))

    def all_edges(self):
        """Deduplicated edge set, drift edge included."""
        es = list(self.edges) + ([self.drift] if self.drift is not None else [])
        return sorted(set(es))


def components(spec):
    """Connected components as sorted lists of 1-based vertices (union-find)."""
    parent = list(range(spec.n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in spec.all_edges():
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for v in range(1, spec.n + 1):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(spec):
    return len(components(spec)) == 1


def fixed_points(spec):
    """Standard basis vectors ``e_k`` of the isolated vertices."""
    touched = {v for e in spec.all_edges() for v in e}
    out = []
    for k in range(1, spec.n + 1):
        if k not in touched:
            e = np.zeros(spec.n)
            e[k - 1] = 1.0
            out.append(StatePoint(e, "sphere"))
    return out


def system_from_edges(spec, **assertions):
    """The skew :class:`GeneratorSet` with one ``omega`` per edge.

    An empty edge list without drift yields the trivial system with a single
    zero control, so every graph maps to a valid system.
    """
    controls = [omega(spec.n, i, j) for i, j in spec.edges]
    drift = omega(spec.n, *spec.drift) if spec.drift is not None else None
    if not controls and drift is None:
        controls = [np.zeros((spec.n, spec.n))]
    return GeneratorSet(n=spec.n, controls=controls, drift=drift, kind="skew", **assertions)
