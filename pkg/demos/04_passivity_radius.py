"""Passivity-radius lower bounds and random perturbation probes.

Any structured perturbation of {A, B, C, D} with norm below the bound keeps
W(X) positive definite. Probes at 0.99 x bound never fail. The bound is
conservative: random directions usually survive much larger norms, while the
scalar model's destructive perturbations show how far the worst case is.
Note that the bound is largest where X is small, not at the analytic center.
"""
import numpy as np

from passivity_center import StateSpaceModel, compute_analytic_center, probe_perturbations, random_passive_model, x_passivity_bound
from passivity_center.radius import perturbation_norm, scalar_destructive_perturbations

M = StateSpaceModel(-1.0, 1.0, 1.0, 2.0)
print("scalar model, bound along the feasible interval:")
for x in (0.2, 0.5, 1.0, 2.0, 5.0, 9.0):
    print(f"  x = {x:4.1f}: bound {x_passivity_bound(M, np.array([[x]])).value:.5f}")
for name, d in scalar_destructive_perturbations(-1.0, 1.0, 1.0, 2.0).items():
    print(f"  destructive perturbation '{name}' has norm {perturbation_norm(d):.4f}")

M = random_passive_model(6, 2, seed=3)
Xc = compute_analytic_center(M).x_center
bound = x_passivity_bound(M, Xc)
print(f"random model n=6, m=2: bound at the center {bound.value:.4e}")
rep = probe_perturbations(M, Xc, bound, samples=200, margin=[0.5, 0.99, 5.0, 50.0], seed=0)
for mu, v in rep.items():
    print(f"  margin {mu:5.2f}: {v['positive_definite']}/{v['samples']} stay PD, min lambda {v['min_lambda']:.2e}")
