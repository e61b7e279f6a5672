"""Extremal solutions of the passivity Riccati equations.

Every feasible X lies between the minimal and maximal Riccati solutions; the
center sits strictly inside, and both extremal points make W(X) singular.
"""
import numpy as np

from passivity_center import compute_analytic_center, lmi_matrix, min_eigenvalue, random_passive_model, riccati_residual, solve_extremal

for domain in ("continuous", "discrete"):
    M = random_passive_model(5, 2, seed=1, time_domain=domain)
    pair = solve_extremal(M)
    Xc = compute_analytic_center(M).x_center
    print(f"{domain}:")
    for name, X in (("X_-", pair.x_min), ("X_+", pair.x_max)):
        W = lmi_matrix(M, X)
        print(f"  {name}: Riccati residual {np.linalg.norm(riccati_residual(M, X)):.1e}, "
              f"lambda_min(W)/||W|| {min_eigenvalue(W) / np.linalg.norm(W, 2):.1e}")
    print(f"  lambda_min(X_c - X_-) = {min_eigenvalue(Xc - pair.x_min):.3e}")
    print(f"  lambda_min(X_+ - X_c) = {min_eigenvalue(pair.x_max - Xc):.3e}")
    print(f"  closed-loop spectra of X_-/X_+ (abs real parts or moduli):")
    for s in pair.closed_loop_spectra:
        vals = np.abs(s) if M.is_discrete else s.real
        print("   ", np.round(np.sort(vals), 4))
