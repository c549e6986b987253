"""A trajectory never leaves the orbit it starts on.

The fixed-axis system is driven from e2 by random piecewise-constant
controls.  The first coordinate stays at zero to rounding and the rank is
the same at every recorded state.  Running the schedule backwards returns
to the start.
"""

import numpy as np

from liebilinear import ControlSchedule, lie_closure, rank_at, run
from liebilinear.fixtures import fixed_axis_system

gens = fixed_axis_system()
h = lie_closure(gens)
rng = np.random.default_rng(3)
k = 40
sched = ControlSchedule(np.cumsum(np.r_[0.0, rng.uniform(0.05, 0.5, k)]), rng.uniform(-3, 3, (k, 2)))

traj = run(gens, [0, 1, 0, 0], sched, oversample=5)
ranks = sorted({rank_at(h, x) for x in traj.states})
print(f"{len(traj.states)} states, max |x1| = {np.abs(traj.states[:, 0]).max():.1e}, ranks seen {ranks}")
print(f"final state {np.round(traj.final, 6)}")

back = run(gens, traj.final, sched.reversed())
print(f"after reversing: {np.round(back.final, 12)}")
