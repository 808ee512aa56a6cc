"""
Steering ellipsoid and maximal steered coherence
================================================

Every measurement Alice makes collapses Rob's qubit onto the steering
ellipsoid.  MSC is the largest coherence she can steer in the eigenbasis of
Rob's state.
"""
import numpy as np

from relmetro import ModelParams, model_state
from relmetro.correlations import fibonacci_sphere, msc_bruteforce, msc_model_closed, msc_xstate
from relmetro.states import XState, steered_bloch_vectors, steering_ellipsoid

np.set_printoptions(precision=4, suppress=True)

params = ModelParams(theta=1.8, phi=0.0, p=0.2, q=0.1, r=0.3)
rho = model_state(params).rho
e = steering_ellipsoid(rho)
print("center  ", e.center)
print("semiaxes", e.semiaxes)

# brute-force steering: projective outcomes sit on the ellipsoid surface
pts = steered_bloch_vectors(rho, fibonacci_sphere(2000))
print("all inside:", all(e.contains(v) for v in pts))

# three routes to MSC
print("\nX-state formula", msc_xstate(XState.from_matrix(rho)))
print("closed form    ", msc_model_closed(params.q, params.r))
print("brute force    ", msc_bruteforce(rho, n_dirs=4096))
