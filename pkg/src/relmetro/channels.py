"""Weak measurement, Unruh decoherence on Rob's mode, and measurement reversal.

The model state is assembled two ways: from its closed-form X-state entries
and by composing the channels on the initial probe.  Both are exposed so the
agreement can be checked.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveInput, ParamOutOfRange, ZeroProbability
from .linalg_core import I2, SX, allclose
from .states import initial_state

ZERO_PROB_TOL = 1e-12
PIPELINE_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    theta: float
    phi: float = 0.0
    p: float = 0.0
    q: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        if not 0 <= self.theta <= np.pi:
            raise ParamOutOfRange(f"theta={self.theta} outside [0, pi]")
        if not 0 <= self.phi <= 2 * np.pi:
            raise ParamOutOfRange(f"phi={self.phi} outside [0, 2pi]")
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0 <= v < 1:
                raise ParamOutOfRange(f"{name}={v} outside [0, 1)")
        if not 0 <= self.r <= np.pi / 4:
            raise ParamOutOfRange(f"r={self.r} outside [0, pi/4]")

    def replace(self, **kw) -> "ModelParams":
        d = dict(theta=self.theta, phi=self.phi, p=self.p, q=self.q, r=self.r)
        d.update(kw)
        return ModelParams(**d)


@dataclass(frozen=True)
class ModelState:
    rho: np.ndarray
    success_probability: float


def weak_measurement_op(p: float) -> np.ndarray:
    """Null-outcome Kraus operator diag(sqrt(1-p), 1) of the partial-collapse measurement."""
    if not 0 <= p <= 1:
        raise ParamOutOfRange(f"p={p} outside [0, 1]")
    return np.diag([np.sqrt(1 - p), 1.0]).astype(complex)


def reversal_op(q: float) -> np.ndarray:
    """Unnormalized reversal sigma_x M0(q) sigma_x = diag(1, sqrt(1-q))."""
    if not 0 <= q <= 1:
        raise ParamOutOfRange(f"q={q} outside [0, 1]")
    return SX @ weak_measurement_op(q) @ SX


def unruh_isometry(r: float) -> np.ndarray:
    """Map Rob's Minkowski qubit into region I (x) region II.

    Columns are the images of |0> and |1>; rows index |n_I n_II>.
    """
    if not 0 <= r <= np.pi / 4:
        raise ParamOutOfRange(f"r={r} outside [0, pi/4]")
    v = np.zeros((4, 2), dtype=complex)
    v[0, 0] = np.cos(r)  # |0_I 0_II>
    v[3, 0] = np.sin(r)  # |1_I 1_II>
    v[2, 1] = 1.0        # |1_I 0_II>
    return v


def apply_unruh(rho, r: float) -> np.ndarray:
    """Send Rob's qubit of an Alice (x) Rob operator through the Unruh channel.

    Works on any 4x4 operator (not only normalized states).
    """
    v = np.kron(I2, unruh_isometry(r))  # 8x4: A (x) I (x) II
    big = v @ np.asarray(rho, dtype=complex) @ v.conj().T
    t = big.reshape(2, 2, 2, 2, 2, 2)  # a, I, II, a', I', II'
    return np.einsum("abcdec->abde", t).reshape(4, 4)


def acceleration_to_r(omega: float, a: float) -> float:
    """Dimensionless acceleration parameter, cos r = (1 + exp(-2 pi omega / a))^(-1/2)."""
    if omega <= 0 or a <= 0:
        raise NonPositiveInput("omega and a must be positive")
    return float(np.arccos(1 / np.sqrt(1 + np.exp(-2 * np.pi * omega / a))))


def model_entries(theta, phi, p, q, r) -> np.ndarray:
    """Closed-form X-state entries before normalization; no range validation."""
    s, c = np.sin(theta / 2), np.cos(theta / 2)
    pb, qb = 1 - p, 1 - q
    cr, sr = np.cos(r), np.sin(r)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = s * s * pb * cr * cr
    m[1, 1] = s * s * pb * qb * sr * sr
    m[3, 3] = c * c * qb
    m[0, 3] = s * c * np.exp(-1j * phi) * np.sqrt(pb * qb) * cr
    m[3, 0] = np.conj(m[0, 3])
    return m


def model_rho_unnormalized(params: ModelParams) -> np.ndarray:
    return model_entries(params.theta, params.phi, params.p, params.q, params.r)


def normalization(params: ModelParams) -> float:
    return float(np.trace(model_rho_unnormalized(params)).real)


def model_rho_closed(params: ModelParams) -> np.ndarray:
    n = normalization(params)
    if n < ZERO_PROB_TOL:
        raise ZeroProbability(f"normalization {n:.3e}")
    return model_rho_unnormalized(params) / n


def pipeline_unnormalized(params: ModelParams) -> np.ndarray:
    """Probe -> weak measurement -> Unruh -> reversal, without renormalizing."""
    rho = initial_state(params.theta, params.phi)
    k = np.kron(I2, weak_measurement_op(params.p))
    rho = k @ rho @ k.conj().T
    rho = apply_unruh(rho, params.r)
    k = np.kron(I2, reversal_op(params.q))
    return k @ rho @ k.conj().T


def model_state(params: ModelParams, check: bool = True) -> ModelState:
    """Post-selected Alice / region-I state and its success probability.

    With ``check`` the channel composition is compared against the closed
    form entrywise.
    """
    raw = pipeline_unnormalized(params)
    prob = float(np.trace(raw).real)
    if prob < ZERO_PROB_TOL:
        raise ZeroProbability(f"success probability {prob:.3e}")
    rho = model_rho_closed(params)
    if check and not allclose(raw / prob, rho, PIPELINE_TOL):
        raise RuntimeError("channel pipeline disagrees with closed-form state")
    return ModelState(rho, prob)


def random_params(rng, p_max: float = 0.99, q_max: float = 0.99) -> ModelParams:
    return ModelParams(
        theta=rng.uniform(0, np.pi),
        phi=rng.uniform(0, 2 * np.pi),
        p=rng.uniform(0, p_max),
        q=rng.uniform(0, q_max),
        r=rng.uniform(0, np.pi / 4),
    )
