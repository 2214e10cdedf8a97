"""
Entropy as a witness that a family is not union-closed
======================================================

Draw A and B independently and uniformly from a family F.  If F were
union-closed, A ∪ B would take at most |F| values, so its entropy could not
exceed log2 |F|.  Seeing H(A ∪ B) > log2 |F| is therefore a proof that F is
not union-closed.  Silence proves nothing, as the second family shows.
"""

import math

from uclab import (
    SetFamily,
    entropy_gain_scan,
    gilmer_certificate,
    gilmer_ratio,
    make_binomial,
    uniform_distribution,
    union_distribution,
)
from uclab.family import elements_of

# Two singletons: the union takes three values, the family only has two.
F = SetFamily.from_sets(2, [{1}, {2}])
report = gilmer_certificate(F)
print(f"{{{{1}},{{2}}}}: H(A) = {report.h_a.bits:g}, H(A u B) = {report.h_aub.bits:g} -> {report.verdict.value}")

# All subsets of [3] of size at most 2.  Not union-closed, yet the union is
# so concentrated on {1,2,3} that its entropy stays below log2 7.
G = make_binomial(3, "at_most", 2)
U = uniform_distribution(G)
law = union_distribution(U, U)
for bits, p in law.items():
    print(f"  Pr[A u B = {set(elements_of(bits)) or '{}'}] = {p}")
report = gilmer_certificate(G)
print(f"binom([3],<=2): H(A) = {report.h_a.bits:.6f} (log2 7 = {math.log2(7):.6f}), "
      f"H(A u B) = {report.h_aub.bits:.6f} -> {report.verdict.value}")

# Mixing a little of A u B back into A does raise the entropy, which is the
# starting point of the perturbation argument.
scan = entropy_gain_scan(G)
for delta, gain, _ in scan.rows[:6]:
    print(f"  delta = {delta:<9g} H(A^delta) - H(A) = {gain:+.6f}")
print(f"largest gain {scan.best_gain:.6f} at delta = {scan.best_delta:g}")

# When every element is rare the union has much more entropy than A.
rare = SetFamily(100, tuple(1 << i for i in range(100)))
g = gilmer_ratio(uniform_distribution(rare))
print(f"100 singletons: max marginal {g.max_marginal}, H(A u B)/H(A) = {g.ratio:.4f}")
