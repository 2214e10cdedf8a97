"""
Families with few abundant elements
===================================

An element is abundant when it lies in at least half of the members.  The
conjecture asks for one; these constructions show how few there can be.
"""

from uclab import (
    abundance_inequality,
    abundant_elements,
    frequency_profile,
    is_union_closed,
    make_Fm,
    make_S12_4,
    make_Snk,
)
from uclab.constructions import snk_clauses
from uclab.family import blocks

# F_m: the power set of [m] plus a chain of prefixes.  Frequencies fall
# steeply along the chain.
for m in (2, 3, 4):
    F = make_Fm(m)
    prof = frequency_profile(F)
    print(f"F_{m}: {len(F)} members on [{F.n}], union-closed={is_union_closed(F)}, "
          f"max fraction {prof.max_fraction}, abundant {sorted(abundant_elements(F))}")

# A 12-point family where only the designated pair is abundant.
S = make_S12_4()
counts = frequency_profile(S).counts
print(f"\nS12_4: {len(S)} members, counts {counts[1]}, {counts[2]} then {counts[3]} x 10")
print(f"abundant: {sorted(abundant_elements(S))}, union-closed: {is_union_closed(S)}")

# The general family is far too large to list, so it is kept in clause form
# and counted by inclusion-exclusion.
for n, k in ((30, 3), (40, 4), (50, 5)):
    T = make_Snk(n, k)
    print(f"S^{n}_{k}: {T.size:.3e} members, union-closed={is_union_closed(T)}, "
          f"abundant={sorted(abundant_elements(T))}, singleton blocks={blocks(T).all_singletons}, "
          f"{abundance_inequality(n, k)}")

# For small n the inequality fails and every element becomes abundant.
print(f"\n(n, k) = (6, 3): {abundance_inequality(6, 3)}, abundant {sorted(abundant_elements(snk_clauses(6, 3)))}")
