"""
Phase QFI sandwiched between LQU and MSC
========================================

For the phase parameter, local quantum uncertainty bounds F_phi from below
and maximal steered coherence bounds it from above.
"""
import numpy as np

from relmetro import ModelParams, model_state
from relmetro.correlations import lqu_closed, lqu_numeric, msc_model_closed
from relmetro.qfi import qfi_phase_closed

print(f"{'r':>6} {'LQU':>9} {'F_phi':>9} {'MSC':>9}")
for r in np.linspace(0, np.pi / 4, 6):
    params = ModelParams(theta=1.2, phi=0.0, p=0.3, q=0.6, r=r)
    rho = model_state(params).rho
    print(f"{r:6.3f} {lqu_numeric(rho):9.5f} {qfi_phase_closed(params):9.5f} {msc_model_closed(0.6, r):9.5f}")

# the LQU closed form tracks the W-matrix eigenvalue route
params = ModelParams(theta=2.1, phi=1.0, p=0.4, q=0.2, r=0.6)
print("\nLQU numeric", lqu_numeric(model_state(params).rho), "closed", lqu_closed(params))
