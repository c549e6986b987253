"""Rotations in coordinate planes, read as graph edges.

A generator E_ij - E_ji is an edge between vertices i and j.  The system
reaches the whole sphere exactly when the graph is connected; every isolated
vertex k leaves e_k fixed.  Here both tests run on all 64 graphs on four
vertices and are compared.
"""

import itertools
from collections import Counter

from liebilinear import EdgeSpec, analyze, components, is_connected, system_from_edges

pairs = list(itertools.combinations(range(1, 5), 2))
tally = Counter()
for mask in itertools.product([0, 1], repeat=len(pairs)):
    spec = EdgeSpec(4, [p for p, keep in zip(pairs, mask) if keep])
    graph = is_connected(spec)
    rank = analyze(system_from_edges(spec)).controllable
    tally[(graph, rank)] += 1

print("(graph connected, rank test controllable) -> count")
for key, count in sorted(tally.items()):
    print(f"  {key}: {count}")

spec = EdgeSpec(4, [(2, 3), (3, 4)])
print(f"\nedges {spec.edges}: components {components(spec)}")
