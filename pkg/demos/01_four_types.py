"""
Four types, four categories
===========================

A walk through the small instance used throughout the docs: what the
classes look like, what the optimal plan is, and how it changes after
feedback.
"""

# %%
# Relevant sets, types numbered from 1: A {1,2,3}, B {2,3}, C {1,4}, D {2,4}.
import numpy as np

from seqrel import instances
from seqrel.greedy import FarsightedSolver, evaluate_policy, get_policy
from seqrel.model import condition, initial_state, posterior
from seqrel.optimal import ClassSolver
from seqrel.structure import nondominated_classes

inst = instances.fig1()
print(inst.relevance)
root = initial_state(inst)

# %%
# B is dominated by A, so only A, C and D are worth testing first.
part = nondominated_classes(inst, root)
for c in part.classes:
    print([inst.category_names[j] for j in c.categories], c.members)
print("dominated:", [inst.category_names[j] for j in part.dominated])

# %%
# The optimal plan tests A first; after a negative answer only type 4 is left.
rep = ClassSolver(inst).solve()
print("value", rep.value)
print("order", [[inst.category_names[j] for j in c] for c in rep.level_ordering])

# %%
# Negative feedback on C leaves types 2 and 3; A and B now share a relevant
# set and fuse into one class with two products.
st = condition(inst, root, 2, 0)
print(posterior(inst, st))
print([[inst.category_names[j] for j in c.categories] for c in nondominated_classes(inst, st).classes])

# %%
# Heuristics on the same instance, across beta.
for beta in np.linspace(0.0, 0.9, 4):
    b = inst.with_beta(float(beta))
    opt = ClassSolver(b).solve().value
    far = FarsightedSolver(b).solve().value
    nai = evaluate_policy(b, get_policy("naive"))
    print(f"beta={beta:.1f} opt={opt:.4f} farsighted={far / opt:.4f} naive={nai / opt:.4f}")
