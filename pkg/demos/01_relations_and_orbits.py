# Ternary relations on {1..n} and how groups cut them into orbits.
import numpy as np

from ternary_schemes import (
    coordinate_group,
    cyclic_group,
    nontrivial_domain,
    orbits,
    relabel_triple,
    trivial_relations,
)
from ternary_schemes.groups import COORD, Permutation

n = 4

# The four trivial relations are fixed by the shape of a triple:
# (x,x,x), (y,x,x), (x,y,x) and (x,x,y).
for i, r in enumerate(trivial_relations(n)):
    print(f"R{i}: {len(r):3d} triples, first {r.least()}")

# Everything else has three distinct entries.
dom = nontrivial_domain(n)
print("all-distinct triples:", len(dom), "=", n * (n - 1) * (n - 2))

# Relabeling moves vertices, coordinate permutation moves positions.
c4 = Permutation.from_cycles(n, [(1, 2, 3, 4)])
print("(1,2,4) relabeled by", c4, "->", relabel_triple(c4, (1, 2, 4)))

# Orbits of the 4-cycle on the all-distinct triples: 6 orbits of size 4.
orbs = orbits(cyclic_group(n), list(dom))
print("cyclic orbits:", [len(o) for o in orbs])
print("first orbit:", orbs[0])

# The coordinate S3 instead gives one orbit per 3-subset.
orbs = orbits(coordinate_group(), list(dom), COORD)
print("coordinate orbits:", [len(o) for o in orbs])

# Membership is a boolean mask over the n^3 cube, so unions are array ops.
mask = np.zeros(n ** 3, dtype=bool)
for r in trivial_relations(n):
    mask |= r.members
print("trivial triples cover", mask.sum(), "of", n ** 3)
