"""Matrix Lie algebra kernel.

Brackets, row-major vectorization, rank-revealing spans and the Lie closure
of a finite set of matrices by iterated bracketing.  Every rank decision in
the package goes through :func:`resolve_tolerance`, so a single user
override changes all of them consistently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalError, SaturationError

__all__ = [
    "KINDS",
    "LieBasis",
    "ambient_algebra_dim",
    "bracket",
    "default_tolerance",
    "field_tolerance",
    "is_skew",
    "lie_closure",
    "resolve_tolerance",
    "span_dim",
    "subspace_rank",
    "vec",
]

KINDS = ("skew", "affine", "general")
EPS = np.finfo(float).eps

# Headroom over max_dim * eps for accumulated rounding in brackets and
# Gram-Schmidt sweeps.  Residuals of genuinely new directions are O(1).
_CLOSURE_SAFETY = 10.0
# Basis elements are only accurate to about the closure's admission
# threshold, so ranks of fields built from them are cut well above it.
BASIS_NOISE_FACTOR = 100.0


def _as_square(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"{name} must be square, got shape {a.shape}")
    return a


def bracket(a, b):
    """Matrix commutator ``ab - ba``."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise InputError(f"bracket of mismatched shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def vec(a):
    """Row-major flattening, so the Frobenius product becomes a dot product."""
    return np.asarray(a, dtype=float).reshape(-1)


def is_skew(g, rtol=1e-12):
    """True when ``||g + g^T||_inf <= rtol * ||g||_inf``."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        return False
    scale = np.linalg.norm(g, np.inf)
    return np.linalg.norm(g + g.T, np.inf) <= rtol * scale


def ambient_algebra_dim(kind, n):
    """Dimension of so(n), se(n) or gl(n)."""
    if n < 1:
        raise InputError(f"state dimension must be positive, got {n}")
    if kind == "skew":
        return n * (n - 1) // 2
    if kind == "affine":
        return n * (n - 1) // 2 + n
    if kind == "general":
        return n * n
    raise InputError(f"unknown kind {kind!r}; expected one of {KINDS}")


def default_tolerance(sigma_max, shape):
    """``max(shape) * eps * sigma_max``, the usual numerical-rank threshold."""
    return max(shape) * EPS * sigma_max


def resolve_tolerance(tol, sigma_max, shape):
    """Turn a tolerance policy into a number.

    ``tol`` may be None (default policy), a callable
    ``(sigma_max, shape) -> float`` or an absolute threshold.
    """
    if tol is None:
        return default_tolerance(sigma_max, shape)
    if callable(tol):
        return float(tol(sigma_max, shape))
    return float(tol)


def span_dim(rows, tol=None):
    """Numerical rank of a stack of row vectors."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return 0
    if not np.all(np.isfinite(rows)):
        raise NumericalError("non-finite entries in rank computation")
    s = np.linalg.svd(rows, compute_uv=False)
    thresh = resolve_tolerance(tol, s[0], rows.shape)
    return int(np.count_nonzero(s > thresh))


def subspace_rank(vectors, tol=None):
    """Dimension and orthonormal basis of the span of equally shaped arrays.

    Parameters
    ----------
    vectors : sequence of array_like
        Matrices (or vectors) of a common shape.
    tol : None, float or callable, optional
        Rank threshold policy, see :func:`resolve_tolerance`.

    Returns
    -------
    dim : int
        Number of singular values of the stacked, vectorized inputs above
        the threshold.
    basis : ndarray, shape (dim, *shape)
        Orthonormal (Frobenius) basis of the span, in the inputs' shape.
    """
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    if not vectors:
        raise InputError("subspace_rank needs at least one element")
    shape = vectors[0].shape
    for k, v in enumerate(vectors):
        if v.shape != shape:
            raise InputError(f"element {k} has shape {v.shape}, expected {shape}")
    stacked = np.stack([vec(v) for v in vectors])
    if not np.all(np.isfinite(stacked)):
        raise NumericalError("non-finite entries in subspace_rank")
    _, s, vh = np.linalg.svd(stacked, full_matrices=False)
    thresh = resolve_tolerance(tol, s[0], stacked.shape)
    dim = int(np.count_nonzero(s > thresh))
    return dim, vh[:dim].reshape((dim,) + shape)


@dataclass
class LieBasis:
    """Orthonormal basis of a matrix Lie algebra.

    ``elements`` has shape ``(dim, N, N)`` with ``N = n`` for linear kinds
    and ``N = n + 1`` for the homogeneous embedding of se(n).  ``tolerance``
    is the admission threshold used while saturating.
    """

    kind: str
    n: int
    elements: np.ndarray
    tolerance: float
    saturated: bool = True

    @property
    def dim(self):
        return int(self.elements.shape[0])

    @property
    def ambient_dim(self):
        """Dimension of the vectorized matrix space."""
        return int(self.elements.shape[1] * self.elements.shape[2])

    @property
    def matrices(self):
        return list(self.elements)

    def vectors(self):
        return self.elements.reshape(self.dim, -1)


def field_tolerance(basis, scale=0.0):
    """Rank policy for quantities evaluated from a computed basis.

    The larger of ``max_dim * eps * sigma_max`` and
    ``BASIS_NOISE_FACTOR * basis.tolerance * max(sigma_max, scale)``.
    Pass the norm of the evaluation point as ``scale``: basis elements have
    unit norm, so that is the size of a genuine field, and fields that all
    vanish are then not mistaken for a full-rank set of tiny ones.
    """
    floor = BASIS_NOISE_FACTOR * basis.tolerance

    def policy(sigma_max, shape):
        return max(default_tolerance(sigma_max, shape), floor * max(sigma_max, scale))

    return policy


def _matrix_size(kind, n):
    return n + 1 if kind == "affine" else n


def _project_kind(m, kind, n):
    # Strip rounding noise that leaves the ambient algebra.
    if kind == "skew":
        return 0.5 * (m - m.T)
    if kind == "affine":
        out = m.copy()
        out[:n, :n] = 0.5 * (m[:n, :n] - m[:n, :n].T)
        out[n, :] = 0.0
        return out
    return m


def closure_tolerance(size):
    """Default admission threshold for brackets of unit-norm elements."""
    return _CLOSURE_SAFETY * size * size * EPS * size


def lie_closure(gens, kind=None, tol=None):
    """Lie algebra generated by a set of matrices.

    Parameters
    ----------
    gens : GeneratorSet or sequence of array_like
        Either an object exposing ``kind``, ``n`` and ``matrices`` (drift
        included) or a plain list of square matrices.
    kind : str, optional
        Ambient algebra when ``gens`` is a plain list; default ``"general"``.
    tol : None, float or callable, optional
        Rank policy for the seed span; a float also overrides the admission
        threshold for bracket residuals.

    Returns
    -------
    LieBasis
        Saturated orthonormal basis.

    Notes
    -----
    Seeds with the orthonormalized generators, then sweeps: every element
    admitted in the previous sweep is bracketed against all elements with a
    smaller insertion index, in lexicographic order.  A bracket is admitted
    when its residual after two rounds of Gram-Schmidt against the current
    basis exceeds the threshold.  Stops on the first sweep that admits
    nothing.
    """
    if hasattr(gens, "matrices") and hasattr(gens, "kind"):
        kind = gens.kind
        n = gens.n
        mats = list(gens.matrices)
    else:
        kind = kind or "general"
        mats = [_as_square(g, "generator") for g in gens]
        if not mats:
            raise InputError("lie_closure needs at least one generator")
        size = mats[0].shape[0]
        n = size - 1 if kind == "affine" else size
    size = _matrix_size(kind, n)
    cap = ambient_algebra_dim(kind, n)
    for k, m in enumerate(mats):
        if m.shape != (size, size):
            raise InputError(f"generator {k} has shape {m.shape}, expected {(size, size)}")

    dim, seed = subspace_rank(mats, tol=tol)
    if isinstance(tol, (int, float)) and not isinstance(tol, bool):
        admit_tol = float(tol)
    else:
        admit_tol = closure_tolerance(size)

    basis = [vec(_project_kind(b, kind, n)) for b in seed]
    basis = [b / np.linalg.norm(b) for b in basis]
    if dim > cap:
        raise SaturationError(
            f"generators span {dim} dimensions, more than the ambient {cap}",
            partial=_to_basis(kind, n, basis, admit_tol, saturated=False),
        )

    frontier = list(range(len(basis)))
    sweeps = 0
    while frontier:
        sweeps += 1
        if sweeps > cap + 2:
            raise SaturationError(
                "closure did not saturate within the sweep cap",
                partial=_to_basis(kind, n, basis, admit_tol, saturated=False),
            )
        admitted = []
        for j in frontier:
            bj = basis[j].reshape(size, size)
            for i in range(j):
                cand = vec(_project_kind(bracket(basis[i].reshape(size, size), bj), kind, n))
                if not np.all(np.isfinite(cand)):
                    raise NumericalError("non-finite bracket during closure")
                q = np.array(basis)
                resid = cand - q.T @ (q @ cand)
                resid = resid - q.T @ (q @ resid)
                norm = np.linalg.norm(resid)
                if norm > admit_tol:
                    if len(basis) >= cap:
                        raise SaturationError(
                            f"closure exceeded the ambient dimension {cap}; "
                            "tolerance is likely too small",
                            partial=_to_basis(kind, n, basis, admit_tol, saturated=False),
                        )
                    basis.append(resid / norm)
                    admitted.append(len(basis) - 1)
        frontier = admitted
    return _to_basis(kind, n, basis, admit_tol, saturated=True)


def _to_basis(kind, n, rows, tolerance, saturated):
    size = _matrix_size(kind, n)
    if rows:
        elements = np.array(rows).reshape(len(rows), size, size)
    else:
        elements = np.zeros((0, size, size))
    return LieBasis(kind=kind, n=n, elements=elements, tolerance=tolerance, saturated=saturated)
