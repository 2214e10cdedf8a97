"""
Machine-checked one-variable inequalities
=========================================

Two inequalities in the binary entropy h drive the frequency bounds:

    h(x²) >= φ·x·h(x)          on [0, 1]
    h(p)  <= h(2p - p²)        on [0, ψ],  ψ = (3 - √5)/2

Both are settled by bisection with outward-rounded interval arithmetic.  The
first one is tight at x = 1/φ, where no finite interval evaluation can help,
so a convexity argument closes the gap there.
"""

import numpy as np

from uclab import analytic

xs = np.linspace(0, 1, 11)
print("x     h(x^2) - phi*x*h(x)")
for x in xs:
    print(f"{x:.1f}   {analytic.key_lemma_value(x):+.6f}")

cert = analytic.verify_key_lemma()
print(f"\nkey lemma: {cert.status.value} with {len(cert.pieces)} pieces {cert.method_counts()}")
touching = [p for p in cert.pieces if p.lo <= analytic.INV_PHI <= p.hi]
print(f"piece around 1/phi = {analytic.INV_PHI:.6f}: {touching[0].to_line()}")

# The saved text is enough to re-check everything from scratch.
replay = analytic.replay_certificate(cert.serialize())
print(f"replay: ok={replay.ok}, pieces re-verified: {replay.pieces_checked}")

ref = analytic.verify_gilmer_refinement()
print(f"\nrefinement on [0, {ref.domain.hi:.10f}]: {ref.status.value}")
for p in ref.pieces:
    print("  " + p.to_line())

# The two-variable version of the key lemma bottoms out at phi/2.
scan = analytic.two_variate_scan(500)
print(f"\nmin h(xy)/(y h(x) + x h(y)) ~ {scan.min_value:.10f} at {scan.argmin} (phi/2 = {scan.reference:.10f})")

print("\nk  psi_k: root of (1 - x)^k = x")
for k, v in analytic.constants(8).psi_k.items():
    print(f"{k}  {v:.12f}")
