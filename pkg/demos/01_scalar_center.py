"""Analytic center of a scalar passive model, checked against closed forms.

For ``x' = -x + u, y = x + 2u`` the passivity LMI is
``W(x) = [[2x, 1 - x], [1 - x, 4]]`` with ``det W = -x^2 + 10x - 1``, which is
maximized at ``x = 5`` with ``det W = 24``.
"""
import numpy as np

from passivity_center import StateSpaceModel, compute_analytic_center, solve_extremal

M = StateSpaceModel(-1.0, 1.0, 1.0, 2.0)
r = compute_analytic_center(M)
print(f"continuous: x_c = {r.x_center[0, 0]:.12f} (exact 5)")
print(f"            det W = {np.exp(-r.barrier_value):.12f} (exact 24)")
pair = solve_extremal(M)
print(f"            x_- = {pair.x_min[0, 0]:.10f}, x_+ = {pair.x_max[0, 0]:.10f} (exact 5 -/+ 2 sqrt 6)")
print(f"            iterations {r.n_iter}, init {r.init_used}")

# discrete: x+ = x/2 + u, y = x/4 + u/2
Md = StateSpaceModel(0.5, 1.0, 0.25, 1.0, "discrete")
rd = compute_analytic_center(Md)
print(f"discrete:   x_c = {rd.x_center[0, 0]:.12f} (exact 0.875)")
print(f"            det W = {np.exp(-rd.barrier_value):.12f} (exact 0.703125)")
