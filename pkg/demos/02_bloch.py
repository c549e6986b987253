"""A spin in a static field, steered by two transverse controls.

The drift precesses the Bloch vector about z.  The controls add rotations
about y and z; together with their bracket they span so(3), so every
direction on the sphere is reachable.  A resonant pulse of length pi, with
the second control cancelling the precession, flips the spin from the north
pole to the south pole.
"""

import math

import numpy as np

from liebilinear import ControlSchedule, analyze, run
from liebilinear.fixtures import bloch_system

gens = bloch_system(larmor=1.0)
rep = analyze(gens, probe=[0, 0, 1])
print(f"verdict {rep.verdict}, closure dim {rep.closure_dim}, rank {rep.rank_at_probe}")

flip = run(gens, [0, 0, 1], ControlSchedule.constant([1.0, -1.0], math.pi), oversample=6)
print("\npi pulse, resonant:")
for t, x in zip(flip.times, flip.states):
    print(f"  t={t:5.3f}  x={np.round(x, 6)}")

rng = np.random.default_rng(0)
k = 10_000
noisy = run(gens, [0, 0, 1], ControlSchedule(np.linspace(0, 100, k + 1), rng.uniform(-2, 2, (k, 2))))
print(f"\n{k} random pieces: largest norm deviation {noisy.norm_drift():.1e}")
