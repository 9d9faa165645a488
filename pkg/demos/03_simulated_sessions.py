"""
Simulated sessions
==================

Sample a type and a session length, then follow a policy. The average
payoff converges to the exact value computed by backward recursion.
"""

# %%
from seqrel import instances
from seqrel.greedy import evaluate_policy, get_policy
from seqrel.sim import RngStream, monte_carlo, run_session

inst = instances.identity(3, prior=[0.5, 0.3, 0.2], products=[2, 1, 3], beta=0.7)
policy = get_policy("naive")

# %%
# One session, step by step.
print(run_session(inst, policy, RngStream(seed=1)).dump(inst))

# %%
exact = evaluate_policy(inst, policy)
for runs in (100, 1000, 10000, 100000):
    r = monte_carlo(inst, policy, runs, seed=1)
    print(f"{runs:>6} runs: {r.mean:.4f} +- {r.stderr:.4f}   exact {exact:.4f}")

# %%
# Results do not depend on how the runs are split across workers.
print(monte_carlo(inst, policy, 5000, seed=3, workers=1) == monte_carlo(inst, policy, 5000, seed=3, workers=4))
