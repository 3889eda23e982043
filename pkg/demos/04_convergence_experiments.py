"""
Convergence experiments
=======================

The location of the weighted supremum drifts to the ends of (0, 1) and
``a_n V_n - b_n`` drifts toward the Gumbel law, both at iterated-logarithm
speed. The table shows the trend, not the limit.
"""
from empsup import ExperimentConfig, convergence_table, verify_maximal_inequality

config = ExperimentConfig(n_values=(100, 1000, 10_000), replications=2000, master_seed=3, alpha_rule=0.1)
print("n       KS-Gumbel  interior  P(tau<=1/2)  mean V/a_n  indep.TV")
for row in convergence_table(config):
    print(
        f"{row.n:<7} {row.ks_to_gumbel:9.4f} {row.mass_interior:9.4f} {row.p_tau_le_half:12.4f}"
        f" {row.mean_v_over_an:11.4f} {row.independence_tv:9.4f}"
    )

rep = verify_maximal_inequality(n=1000, a=0.01, lam=0.15, replications=5000, master_seed=3)
print(f"maximal inequality: P_hat = {rep.lhs_hat:.4f} +- {rep.stderr:.4f} <= bound {rep.rhs:.4f}: {rep.passed}")
