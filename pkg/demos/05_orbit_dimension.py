"""Orbit dimension two ways.

The rank of the algebra at x is the dimension of the orbit through x.  It
can also be read off the orbit itself: flow a little along every basis
element, then count principal components of the resulting cloud.  For a
random system of each family the two numbers are printed side by side,
together with the rank along a longer random orbit sample.
"""

import numpy as np

from liebilinear import lie_closure, orbit_dim_estimate, rank_at, sample_orbit, verify_rank_constancy
from liebilinear.fixtures import FAMILIES, random_skew_system

rng = np.random.default_rng(1)
n = 5
print("family     closure  rank  local-PCA  rank along orbit")
for family in FAMILIES:
    gens = random_skew_system(n, rng, family)
    h = lie_closure(gens)
    x = rng.standard_normal(n)
    x /= np.linalg.norm(x)
    sample = sample_orbit(gens, x, 200, seed=2)
    const = verify_rank_constancy(h, sample)
    print(f"{family:9s}  {h.dim:7d}  {rank_at(h, x):4d}  {orbit_dim_estimate(h, x):9d}  {const['ranks']}")
