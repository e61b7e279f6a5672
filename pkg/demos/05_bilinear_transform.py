"""Cayley transform between continuous and discrete time.

The transform maps the continuous LMI at X to the discrete LMI at the same X
by a congruence, so det W_d / det W_c is constant and both problems share the
analytic center.
"""
import numpy as np

from passivity_center import (
    CenterOptions,
    cayley_c2d,
    cayley_d2c,
    compute_analytic_center,
    random_passive_model,
    solve_extremal,
    verify_barrier_equivalence,
)

Mc = random_passive_model(4, 2, seed=5)
tm = cayley_c2d(Mc)
print(f"discrete spectral radius after transform: {max(abs(np.linalg.eigvals(tm.model.A))):.4f}")

# points between the center and an extremal solution are strictly feasible
pair = solve_extremal(Mc)
Xc = compute_analytic_center(Mc).x_center
Xs = [t * Xe + (1 - t) * Xc for t in (0.3, 0.7) for Xe in (pair.x_min, pair.x_max)]
rep = verify_barrier_equivalence(Mc, None, [Xc] + Xs)
print(f"det ratios {rep['ratios']} vs |det T|^2 = {rep['det_ratio']:.10f}")

opts = CenterOptions(tol_residual=1e-12)
Xd = compute_analytic_center(tm.model, opts, weight=tm.weight).x_center
print(f"center of the transformed problem matches: {np.linalg.norm(Xd - Xc) / np.linalg.norm(Xc):.1e}")

back = cayley_d2c(tm.model, tm.weight).model
print(f"round trip error in A: {np.linalg.norm(back.A - Mc.A):.1e}")
