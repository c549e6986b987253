"""se(n) support: affine generators and their homogeneous embedding.

An element ``(A, mu)`` of se(n) acts on R^n by the vector field
``x -> A x + mu``.  Embedding it as the (n+1)x(n+1) matrix
``[[A, mu], [0, 0]]`` turns the se(n) bracket into a plain commutator, so the
closure engine in :mod:`liebilinear.algebra` applies unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import field_tolerance, is_skew, span_dim
from .errors import InputError

__all__ = [
    "AffineGenerator",
    "affine_bracket",
    "affine_eval",
    "embed",
    "field_rows",
    "rank_at_affine",
    "unembed",
]


@dataclass(frozen=True)
class AffineGenerator:
    """Element ``(rotation, translation)`` of se(n)."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        rot = np.asarray(self.rotation, dtype=float)
        mu = np.asarray(self.translation, dtype=float).reshape(-1)
        n = mu.shape[0]
        if rot.shape != (n, n):
            raise InputError(
                f"rotation shape {rot.shape} does not match translation length {n}"
            )
        if not (np.all(np.isfinite(rot)) and np.all(np.isfinite(mu))):
            raise InputError("affine generator has non-finite entries")
        if not is_skew(rot):
            raise InputError("rotation part is not skew-symmetric")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", mu)

    @property
    def n(self):
        return self.translation.shape[0]

    @classmethod
    def translation_only(cls, mu):
        mu = np.asarray(mu, dtype=float)
        return cls(np.zeros((mu.size, mu.size)), mu)

    @classmethod
    def rotation_only(cls, a):
        a = np.asarray(a, dtype=float)
        return cls(a, np.zeros(a.shape[0]))


def embed(g):
    """Homogeneous (n+1)x(n+1) matrix ``[[A, mu], [0, 0]]``."""
    n = g.n
    out = np.zeros((n + 1, n + 1))
    out[:n, :n] = g.rotation
    out[:n, n] = g.translation
    return out


def unembed(m):
    """Inverse of :func:`embed`; the bottom row is ignored."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0] - 1
    rot = m[:n, :n]
    return AffineGenerator(0.5 * (rot - rot.T), m[:n, n])


def affine_bracket(g, h):
    """Direct se(n) bracket ``([A, B], A nu - B mu)``.

    Kept independent of the embedding so the two can check each other.
    """
    a, mu = g.rotation, g.translation
    b, nu = h.rotation, h.translation
    return AffineGenerator(a @ b - b @ a, a @ nu - b @ mu)


def affine_eval(g, x):
    """The vector field of ``g`` at ``x``: ``A x + mu``."""
    x = np.asarray(getattr(x, "coords", x), dtype=float).reshape(-1)
    if x.shape[0] != g.n:
        raise InputError(f"point has dimension {x.shape[0]}, generator acts on R^{g.n}")
    return g.rotation @ x + g.translation


def field_rows(elements, x):
    """Fields ``A_k x + mu_k`` of embedded elements, one row per element."""
    elements = np.asarray(elements, dtype=float)
    n = elements.shape[1] - 1
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != n:
        raise InputError(f"point has dimension {x.shape[0]}, expected {n}")
    xh = np.append(x, 1.0)
    return (elements @ xh)[:, :n]


def rank_at_affine(basis, x, tol=None):
    """``dim span{A_k x + mu_k}`` over a saturated basis in embedded form."""
    if basis.kind != "affine":
        raise InputError(f"expected an affine basis, got kind {basis.kind!r}")
    if basis.dim == 0:
        return 0
    x = np.asarray(getattr(x, "coords", x), dtype=float)
    if tol is None:
        tol = field_tolerance(basis, scale=float(np.hypot(np.linalg.norm(x), 1.0)))
    return span_dim(field_rows(basis.elements, x), tol=tol)
