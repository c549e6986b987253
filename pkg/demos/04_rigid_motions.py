"""Rigid motions of the plane.

se(2) elements are pairs (A, mu) acting by x -> Ax + mu.  Two translations
already move the plane everywhere.  A rotation paired with one forward
translation (a unicycle) also reaches everything, because the bracket is a
sideways translation.  A lone rotation only draws circles about the origin,
and the origin itself does not move.
"""

import numpy as np

from liebilinear import analyze, lie_closure, rank_at
from liebilinear.fixtures import rotation_only_system, translations_system, unicycle_system

for name, gens in [
    ("two translations", translations_system(2)),
    ("unicycle", unicycle_system()),
    ("rotation only", rotation_only_system()),
]:
    h = lie_closure(gens)
    rep = analyze(gens, probe=[0.0, 0.0])
    at = {tuple(x): rank_at(h, x) for x in ([0.0, 0.0], [1.5, -0.5])}
    print(f"{name:17s} dim {h.dim}  verdict {rep.verdict:17s} rank {at}")

# The bracket of rotation and forward motion, in matrix form.
u = unicycle_system().matrices
print("\n[rotation, forward] =")
print(np.round(u[0] @ u[1] - u[1] @ u[0], 12))
