"""
Brownian bridge oracle
======================

Simulate grid bridges, record where ``|B|`` peaks and how high, and compare
with the Kolmogorov law and with the empirical process at large ``n``.
"""
import numpy as np

from empsup import ExperimentConfig, kolmogorov_cdf, ks_distance
from empsup.bridge import argmax_abs_rows, sample_bridges
from empsup.harness import histogram2d, simulate, tv_distance
from empsup.limits import cell_masses

loc, val = argmax_abs_rows(sample_bridges(m=2048, count=4000, master_seed=1))
print(f"bridge: KS of sup|B| to Kolmogorov {ks_distance(val, kolmogorov_cdf):.4f}")
print(f"bridge: P(argmax <= 1/2) = {np.mean(loc <= 0.5):.3f}")

config = ExperimentConfig(n_values=(2000,), replications=4000, master_seed=1, weighted=False, normalize=False)
batch = simulate(config, 2000)
print(f"empirical process n=2000: KS of W_n to Kolmogorov {ks_distance(batch.v, kolmogorov_cdf):.4f}")

x_edges = np.linspace(0, 1, 11)
y_edges = np.concatenate([np.linspace(0, 2.5, 10), [np.inf]])
masses = cell_masses(x_edges, y_edges)
for name, (a, b) in {"bridge": (loc, val), "W_n": (batch.tau, batch.v)}.items():
    h = histogram2d(a, b, x_edges, y_edges)
    print(f"{name}: cell TV to the joint density {tv_distance(h.probabilities(), masses):.4f}")
