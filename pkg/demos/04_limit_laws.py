"""Cube-root limit laws for the threshold, the attained lfdr, and the regret.

The support-line threshold fluctuates around its population value at rate
m^(-1/3) with a limit shaped by Chernoff's distribution (the argmax of a
two-sided Brownian motion minus a parabola).  Only two facts about that
distribution enter the predictions: Var(Z) ~= 0.26 and the tail value
P{Z >= 1} ~= 0.05 (its N(0, 0.52^2) approximation supplies full quantiles).
A quick simulation at m=1024 shows how sharp the predictions already are.
"""

import numpy as np

import supportline as sl

spec = sl.model_preset("bh64")
q = 0.2
m = 1024

law_tau = sl.threshold_limit(spec, q, m)
law_lfdr = sl.lfdr_limit(spec, q, m)
print(f"predictions for m={m}, q={q}:")
print(f"  threshold center t_q = {law_tau.center:.5f}, scale = {law_tau.scale:.5f}")
print(f"  attained lfdr center pi0*q = {law_lfdr.center:.3f}, "
      f"relative scale = {law_lfdr.scale:.4f}")
print(f"  95th percentile of attained lfdr ~= "
      f"{sl.lfdr_upper_percentile(law_lfdr.center, law_lfdr.scale):.4f}")

config = sl.ScenarioConfig(
    name="demo-limits", model="bh64", m=m, replications=5_000,
    seed=777, q_grid=(q,), procedures=("sl",),
)
cols = sl.run_scenario(config).select("sl", q)
iqr_z = 2 * sl.chernoff_quantile(0.75)
print(f"\nsimulation with {config.replications} replicates:")
print(f"  sd(tau)  : {cols['tau'].std(ddof=1):.5f}  "
      f"vs predicted {law_tau.scale * np.sqrt(sl.CHERNOFF_VARIANCE):.5f}")
mc_iqr = np.quantile(cols["realized_max_lfdr"], 0.75) - np.quantile(
    cols["realized_max_lfdr"], 0.25
)
print(f"  IQR(lfdr): {mc_iqr:.5f}  "
      f"vs predicted {law_lfdr.center * law_lfdr.scale * iqr_z:.5f}")

print("\nregret against the oracle shrinks at rate m^(-2/3):")
for mm in (256, 1024, 4096):
    print(f"  m={mm:5d}: predicted regret {sl.regret_prediction(spec, 0.2, mm):.3e}")

print("\nglobal-null behavior is different: m * regret tends to a gamma series")
limit = sl.global_null_limit(q=0.05, lam=4.0)
print(f"  q=0.05, lambda=4: limit {limit.value:.4f} "
      f"(truncation after {limit.terms} terms, bound {limit.tail_bound:.1e})")

print("\nStorey-estimator limit law on the zeta schedule, for a family with a")
print("genuinely quadratic tail (f1''(1) = 6):")
law = sl.pi0_estimator_limit(
    sl.TwoGroupsSpec(pi0=0.75, alternative=sl.Lehmann(0.5)), m=100_000, curvature=6.0
)
print(f"  m^(2/5)(pi0_hat - pi0) -> N({law.bias_term:.3f}, {law.variance_term:.3f}) "
      f"at zeta = {law.zeta:.2f}")
