"""
Randomised check of every inequality
====================================

Draws random mixed states and random Hermitian observables, evaluates every
bound and structural identity, and reports the worst margin per check.
"""

from varbounds import verify

cfg = verify.TrialConfig(seed=42, trials=200, dim_range=(2, 5), set_size_range=(2, 4))
results = verify.run_suite(cfg)
summary = verify.summarize(results)

print(summary["total"])
for name, row in summary["by_check"].items():
    print(f"{name:<26}{row['checks']:>6}  worst margin {row['worst_margin']:.3e}")

# A single draw, for a closer look
rng = verify.trial_rng(cfg.seed, 0)
state = verify.random_state(3, 2, rng)
print("rank-2 qutrit purity", state.purity)
