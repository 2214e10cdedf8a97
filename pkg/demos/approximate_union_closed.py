"""
Approximately union-closed slices
=================================

Take all sets of size about ψ_k·n.  The union of k random members almost
always has at least (1 - ψ_k)·n elements, yet big sets are exponentially
rarer than slice members.  So a family can be closed under random unions
with high probability while its frequencies stay near ψ_k.
"""

from uclab.constructions import approx_uc_experiment, slice_parameters

for n in (200, 500, 1000, 2000):
    size, threshold = slice_parameters(n, 2)
    r = approx_uc_experiment(n, 2, 400, seed=1979)
    print(f"n={n:5d}: slice {size:4d} ({size / n:.3f} n), threshold {threshold:4d}, "
          f"p_hat = {r.p_hat:.3f}, log2 gap = {r.log_gap:8.2f}")

for k in (2, 3, 4):
    r = approx_uc_experiment(1000, k, 200, seed=7)
    print(f"k={k}: slice {r.slice_size}, threshold {r.threshold}, p_hat = {r.p_hat:.3f}")
