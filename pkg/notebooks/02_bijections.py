"""
Plane partitions, colorings and component flips
===============================================
"""

# %%
# A plane partition with parts at most 2 encodes a merging of two chains:
# a 2 puts a_i below a b, a 0 puts a b below a_i.
from posetmerge import PlanePartition, merged_order, pp_to_merging
from posetmerge.bijections import (
    coloring_to_merging,
    enumerate_monotone_colorings,
    enumerate_plane_partitions,
    flip_component,
    hasse_components,
    merging_to_pp,
)
from posetmerge.merging import enumerate_mergings
from posetmerge.order import hasse_edges, make_antichain

pp = PlanePartition(2, 2, ((2, 1), (1, 0)))
m = pp_to_merging(pp)
print(pp)
print("R", m.r.pairs(), "S", m.s.pairs())
print("covers of the merged order:", hasse_edges(merged_order(m)))
assert merging_to_pp(m) == pp

# %%
# The map turns cellwise order on partitions into the merging order.
pps = enumerate_plane_partitions(2, 2, 2)
ms = [pp_to_merging(p) for p in pps]
agree = all((a <= b) == ma.precedes(mb) for a, ma in zip(pps, ms) for b, mb in zip(pps, ms))
print(len(pps), "partitions, order preserved both ways:", agree)

# %%
# Antichain against chain: a monotone coloring (v1, v2) of K_{m,m} fixes how
# far each a_i reaches into the chain from above and from below.
for c in enumerate_monotone_colorings(1, 3):
    g = coloring_to_merging(c)
    print(c.v1, c.v2, "R", g.r.pairs(), "S", g.s.pairs())

# %%
# Two antichains: reversing one connected piece of the Hasse graph gives
# another proper merging.  Singletons have nothing to reverse.
ms = enumerate_mergings(make_antichain(2, "a"), make_antichain(2, "b"))
m = next(x for x in ms if len(hasse_components(x).nontrivial) == 2)
comps = hasse_components(m)
print("start:", m.r.pairs(), m.s.pairs())
for c in comps.nontrivial:
    f = flip_component(m, c)
    print(f"flip {comps.left[c]}+{comps.right[c]}:", f.r.pairs(), f.s.pairs())
