"""A 30-state, 10-port model: iteration count, timing and center quality."""
import time

from passivity_center import compute_analytic_center, random_passive_model
from passivity_center.lmi import center_equation_residuals

M = random_passive_model(30, 10, seed=7)
t0 = time.perf_counter()
r = compute_analytic_center(M)
print(f"converged={r.converged} in {r.n_iter} iterations, {time.perf_counter() - t0:.2f}s")
print(f"message: {r.message}")
print("relative center-equation residuals:", {k: f"{v:.1e}" for k, v in center_equation_residuals(M, r.x_center).items()})
