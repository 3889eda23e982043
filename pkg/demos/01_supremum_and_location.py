"""
Supremum and location of the standardized empirical process
============================================================

Draw a uniform sample, find where the standardized deviation
``sqrt(n) |F_n(t) - t| / sqrt(t (1 - t))`` peaks, and check the answer
against brute force.
"""
import numpy as np

from empsup import boundary_split, eval_process, grid_oracle_sup, order_statistics, sup_weighted

rng = np.random.default_rng(0)
sample = order_statistics(rng.random(200))

res = sup_weighted(sample)
print(f"V_n = {res.value:.6f} at t = {res.location:.6f} (rank {res.index}, {res.side.value})")

# The peak sits at an order statistic, so a dense grid can never beat it.
oracle = grid_oracle_sup(sample, 10**5)
print(f"grid oracle value {oracle.value:.6f}, same location: {oracle.location == res.location}")

# Re-evaluating the process there, from the right side reported, gives the value back.
print("re-evaluated:", eval_process(sample, res.location, res.side))

# Most of the time the peak is close to 0 or 1: split the domain.
split = boundary_split(sample, alpha=0.1)
print(f"interior [0.1, 0.9]: {split.interior_sup:.4f}   boundary: {split.boundary_sup:.4f}")

# x -> 1 - x mirrors the location and keeps the value.
mirror = sup_weighted(sample.reflect())
print(f"reflected: value {mirror.value:.6f}, location {mirror.location:.6f} = 1 - {res.location:.6f}")
