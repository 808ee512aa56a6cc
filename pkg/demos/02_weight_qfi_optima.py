"""
Weight-parameter QFI and its optimal points
===========================================

F_theta is computed three ways (spectral sum, block SLD, closed form).  The
closed-form optima in r, p and q all reach the same value 1/sin^2(theta).
"""
import numpy as np

from relmetro import ModelParams
from relmetro.qfi import (
    grid_argmax,
    model_family,
    optimal_p,
    optimal_p_q0,
    optimal_q,
    optimal_r,
    optimal_value,
    qfi_block,
    qfi_numeric,
    qfi_weight_closed,
    weight_qfi_array,
)

params = ModelParams(theta=1.3, phi=0.0, p=0.5, q=0.75, r=0.3)
print("spectral ", qfi_numeric(model_family(params, "theta"), params.theta).value)
print("block SLD", qfi_block(params, "theta").value)
print("closed   ", qfi_weight_closed(params))

# without reversal the Unruh effect leaves F_theta alone
print("\nq = 0:", [round(qfi_weight_closed(params.replace(q=0, r=r)), 12) for r in (0, 0.3, np.pi / 4)])

# optimal acceleration
th, p, q = 1.3, 0.5, 0.75
r_opt = optimal_r(th, p, q)
r_grid, _ = grid_argmax(lambda r: weight_qfi_array(th, p, q, r), 0, np.pi / 4)
print(f"\nr_opt = {r_opt:.5f} (grid {r_grid:.4f}), F = {qfi_weight_closed(ModelParams(th, 0, p, q, r_opt)):.10f},"
      f" 1/sin^2 = {optimal_value(th):.10f}")

# optimal pre-measurement without reversal, for theta > pi/2
print("p_opt, F_opt at theta=2pi/3:", optimal_p_q0(2 * np.pi / 3))
print("p_opt(q=0.5, r=0.3, theta=2.3):", optimal_p(0.5, 0.3, 2.3))
print("q_opt(p=0.5, r=0.3, theta=1.0):", optimal_q(0.5, 0.3, 1.0))

# equal strengths: at r = 0 the reversal undoes the measurement exactly
for th in (1.0, 2.3):
    f = weight_qfi_array(th, 0.4, 0.4, np.array([0.0, 0.3, np.pi / 4]))
    print(f"theta={th}: F(p=q=0.4) at r=0, 0.3, pi/4 ->", np.round(f, 6))
