"""
Galois connections from mergings
================================

Proper mergings of chains correspond to dual bonds between contraordinal
scales, and those to Galois connections between the concept lattices.
"""

# %%
from math import comb

from posetmerge.galois import (
    enumerate_galois_boolean_chain,
    galois_boolean_chain_rows,
    galois_chain_rows,
    is_galois_connection,
    render_table,
)

rows = galois_chain_rows(3, 3)
print(render_table([("".join(map(str, pp.flat)), g) for pp, _, g in rows]))

# %%
# Every row satisfies the defining inequalities, and the count is a binomial.
for m in range(1, 6):
    print([len(galois_chain_rows(m, n)) for n in range(1, 6)], [comb(m + n - 2, m - 1) for n in range(1, 6)])
assert all(is_galois_connection(g.phi, g.psi, g.left, g.right) for _, _, g in rows)

# %%
# Boolean lattice on two atoms against a 3-chain: nine connections, one per
# choice of image for each atom.
for c, bond, g in galois_boolean_chain_rows(2, 2):
    print(c.v1 + c.v2, g.phi)
print([len(enumerate_galois_boolean_chain(m, 2)) for m in range(5)])
