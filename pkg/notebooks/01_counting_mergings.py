"""
Counting mergings of small posets
=================================

Enumerate proper mergings by brute structure and compare them with the
closed-form counts.
"""

# %%
# Two 2-chains have 20 proper mergings.  Each one is a pair of cross
# relations (R, S): R says which a's sit below which b's, S the reverse.
from posetmerge import enumerate_mergings, make_antichain, make_chain
from posetmerge.counting import count_antichain_chain, count_antichain_mergings, count_chain_mergings

ms = enumerate_mergings(make_chain(2, "a"), make_chain(2, "b"))
print(len(ms), "mergings of two 2-chains")
for m in ms[:5]:
    print("  R:", m.r.pairs(), " S:", m.s.pairs())

# %%
# Enumeration against the formulas, for the three families.
print(" m n | chains  antichains  antichain-chain")
for m in range(4):
    for n in range(4):
        c = len(enumerate_mergings(make_chain(m, "a"), make_chain(n, "b")))
        a = len(enumerate_mergings(make_antichain(m, "a"), make_antichain(n, "b")))
        ac = len(enumerate_mergings(make_antichain(m, "a"), make_chain(n, "c")))
        assert (c, a, ac) == (count_chain_mergings(m, n), count_antichain_mergings(m, n), count_antichain_chain(m, n))
        print(f" {m} {n} | {c:6d}  {a:10d}  {ac:15d}")

# %%
# Past the enumeration range only the formulas are practical.
print(count_chain_mergings(10, 10), count_antichain_mergings(6, 6), count_antichain_chain(8, 8))

# %%
# Improper mergings identify elements.  Allowing them, two 1-chains merge
# in four ways: a<b, b<a, incomparable, and a=b.
ms = enumerate_mergings(make_chain(1, "a"), make_chain(1, "b"), proper_only=False)
print([(m.r.pairs(), m.s.pairs(), m.proper) for m in ms])
