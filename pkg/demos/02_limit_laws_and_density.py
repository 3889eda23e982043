"""
Limit laws and the joint density of (argmax |B|, sup |B|)
==========================================================

Norming constants, the two-sided Gumbel law, the maximal inequality bound
and a quadrature check of the bridge density.
"""
import numpy as np

from empsup import (
    argmax_sup_density,
    gumbel_cdf,
    integrate_density,
    kolmogorov_cdf,
    maximal_inequality_bound,
    norming_constants,
)

for n in (10**2, 10**4, 10**6, 10**9):
    c = norming_constants(n)
    print(f"n = {n:>10}: a_n = {c.a:.4f}, b_n = {c.b:.4f}")

print("Gumbel CDF at -1, 0, 1, 3:", np.round(gumbel_cdf([-1.0, 0.0, 1.0, 3.0]), 5))
print("bound n=1000, a=0.01, lambda=0.15:", maximal_inequality_bound(1000, 0.01, 0.15))

# Symmetric in x; unlike the weighted case the bridge peak favours the middle.
x = np.array([0.05, 0.25, 0.5, 0.75, 0.95])
print("f(x, 1.0) =", np.round(argmax_sup_density(x, 1.0), 4))

r = integrate_density(y_max=3.0, nodes_x=256, nodes_y=256)
print(f"total mass {r.total:.8f}")
for y in (0.5, 1.0, 1.5):
    print(f"P(sup|B| <= {y}): quadrature {integrate_density(y_max=y).total:.6f}, Kolmogorov {kolmogorov_cdf(y):.6f}")
