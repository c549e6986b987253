"""Two planar rotations in R^4 that never touch the first axis.

B1 turns the (x2, x3) plane and B2 the (x3, x4) plane.  Their bracket turns
(x2, x4), so the generated algebra is a copy of so(3) acting on the last
three coordinates.  That is short of the 6 dimensions of so(4), and the
rank test sees it: at e1 nothing moves, elsewhere the orbit is a 2-sphere
inside the 3-sphere.
"""

import numpy as np

from liebilinear import analyze, bracket, lie_closure, rank_at
from liebilinear.fixtures import fixed_axis_b1, fixed_axis_b2, fixed_axis_system

b1, b2 = fixed_axis_b1(), fixed_axis_b2()
print("[B1, B2] =")
print(bracket(b1, b2).astype(int))

h = lie_closure(fixed_axis_system())
print(f"\nclosure dimension {h.dim} (so(4) has 6)")

for k, e in enumerate(np.eye(4), start=1):
    print(f"rank at e{k}: {rank_at(h, e)}")

rep = analyze(fixed_axis_system(), probe=[0, 1, 0, 0])
print(f"\nverdict: {rep.verdict}")
print(f"fixed points: {rep.fixed_points}")
for line in rep.diagnostics:
    print(" -", line)
