"""
Building the accelerated, weakly measured probe
===============================================

Alice and Rob share sin(theta/2)|00> + cos(theta/2) e^{i phi}|11>.  Rob's
qubit is weakly measured, accelerated (Unruh decoherence) and then the
measurement is reversed.  The result is an X-state.
"""
import numpy as np

from relmetro import ModelParams, model_state
from relmetro.channels import acceleration_to_r, pipeline_unnormalized
from relmetro.states import XState

np.set_printoptions(precision=4, suppress=True)

# acceleration enters through r; omega/a -> infinity is r -> pi/4
for ratio in (0.1, 1.0, 10.0):
    print(f"a/omega = {ratio:5.1f}  ->  r = {acceleration_to_r(1.0, ratio):.4f}")

params = ModelParams(theta=2.0, phi=0.4, p=0.5, q=0.5, r=0.5)
st = model_state(params)
print("\nrho =\n", st.rho)
print("success probability", round(st.success_probability, 6))

# the channel composition and the closed-form entries agree
raw = pipeline_unnormalized(params)
print("pipeline deviation", np.abs(raw / np.trace(raw).real - st.rho).max())

# only the diagonal and the anti-diagonal survive
x = XState.from_matrix(st.rho)
print(f"populations {x.rho11:.4f} {x.rho22:.4f} {x.rho33:.4f} {x.rho44:.4f}")
print(f"coherences  rho14 = {x.rho14:.4f}, rho23 = {x.rho23:.4f}")
