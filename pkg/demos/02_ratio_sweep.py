"""
Heuristic to optimal ratios over beta
=====================================

Random 5x5 instances, one product per category. The ratios start at 1 for
beta = 0 (one recommendation, all policies are myopic), dip in the middle,
and climb back as beta grows.
"""

# %%
from seqrel import bench
from seqrel.bounds import BoundInputs, farsighted_bound, naive_bound

cfg = bench.SweepConfig(5, 5, samples=50, seed=7)
res = bench.ratio_sweep(cfg)

# %%
print(f"{'beta':>5} {'far avg':>8} {'far min':>8} {'nai avg':>8} {'nai min':>8} {'far lb':>6} {'nai lb':>6}")
for a in res.aggregates:
    b = BoundInputs(a.beta, 1, 5, 5)
    print(f"{a.beta:5.2f} {a.avg_ratio_farsighted:8.4f} {a.min_ratio_farsighted:8.4f} "
          f"{a.avg_ratio_naive:8.4f} {a.min_ratio_naive:8.4f} "
          f"{farsighted_bound(b):6.3f} {naive_bound(b):6.3f}")

# %%
# The worst instance for naive greedy, and where it loses.
worst = min(res.rows, key=lambda r: r.ratio_naive)
print(worst)
inst = res.instances[worst.sample_id]
print(inst.relevance, inst.prior.round(3))

# %%
# To keep the curves, write them out.
# bench.emit_csv(res.rows, res.aggregates, *bench.sweep_paths(".", "sweep_5x5"))
