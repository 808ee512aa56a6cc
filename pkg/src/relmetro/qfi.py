"""Quantum Fisher information of the weight (theta) and phase (phi) parameters.

Three independent routes are provided:

* ``qfi_numeric`` -- SLD spectral sum over the eigensystem of rho(X) with a
  central-difference derivative, for any one-parameter family;
* ``block_sld`` / ``qfi_block`` -- the SLD assembled block by block from the
  direct-sum structure of the model state;
* ``qfi_weight_closed`` / ``qfi_phase_closed`` -- closed-form expressions.

The optimum solvers return ``None`` when the closed-form optimum falls
outside the physical domain.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .channels import ModelParams, model_entries
from .errors import (
    DegenerateSupport,
    NoOptimum,
    ParamOutOfRange,
    SingularBlock,
    SingularTheta,
)
from .linalg_core import eig_hermitian

SUPPORT_TOL = 1e-10
DET_TOL = 1e-14
DEFAULT_STEP = 1e-5

# Model-state blocks in the computational basis: {|00>,|11>}, {|01>}, {|10>}.
MODEL_BLOCKS = ((0, 3), (1,), (2,))


@dataclass(frozen=True)
class StateFamily:
    evaluate: Callable[[float], np.ndarray]
    derivative_step: float = DEFAULT_STEP

    def derivative(self, x: float) -> np.ndarray:
        h = self.derivative_step
        return (self.evaluate(x + h) - self.evaluate(x - h)) / (2 * h)


@dataclass(frozen=True)
class QfiResult:
    value: float
    method: str  # numeric_spectral | block_sld | closed_form
    support_dim: int = 0

    def __float__(self):
        return self.value


def _clamp(value: float) -> float:
    if -SUPPORT_TOL <= value < 0:
        return 0.0
    return float(value)


def qfi_numeric(family: StateFamily, x: float) -> QfiResult:
    """F = sum_{l_i + l_j > eps} 2 |<v_i| d rho |v_j>|^2 / (l_i + l_j)."""
    rho = family.evaluate(x)
    drho = family.derivative(x)
    dec = eig_hermitian(rho)
    lam, v = dec.eigenvalues, dec.eigenvectors
    d = v.conj().T @ drho @ v
    den = lam[:, None] + lam[None, :]
    mask = den > SUPPORT_TOL
    if not mask.any():
        raise DegenerateSupport("no eigenvalue pair above the support threshold")
    f = np.sum(2 * np.abs(d[mask]) ** 2 / den[mask])
    return QfiResult(_clamp(f), "numeric_spectral", int(np.sum(lam > SUPPORT_TOL)))


def _block_sld_single(rho, drho) -> np.ndarray:
    rho = np.atleast_2d(np.asarray(rho, dtype=complex))
    drho = np.atleast_2d(np.asarray(drho, dtype=complex))
    n = rho.shape[0]
    if n == 1:
        x = rho[0, 0].real
        if x <= DET_TOL:
            return np.zeros((1, 1), dtype=complex)
        return drho / x
    if n != 2:
        raise ValueError("blocks must be 1x1 or 2x2")
    mu = np.trace(rho).real / 2
    if mu <= DET_TOL:
        return np.zeros((2, 2), dtype=complex)
    dmu = np.trace(drho).real / 2
    det = np.linalg.det(rho).real
    out = drho - dmu * np.eye(2)
    if det > DET_TOL:
        dpur = 2 * np.trace(rho @ drho).real
        xi = 2 * mu * dmu - dpur / 4
        try:
            inv = np.linalg.inv(rho)
        except np.linalg.LinAlgError as exc:
            raise SingularBlock(str(exc)) from exc
        out = out + xi * inv
    return out / mu


def block_sld(rho_blocks, drho_blocks) -> np.ndarray:
    """Direct sum of per-block SLDs, ordered as the blocks are given.

    Each block uses L = [d rho + xi rho^{-1} - d mu] / mu with mu = Tr rho / 2,
    xi = 2 mu d mu - d(Tr rho^2) / 4; xi is dropped for singular blocks.
    """
    if len(rho_blocks) != len(drho_blocks):
        raise ValueError("rho_blocks and drho_blocks differ in length")
    parts = [_block_sld_single(b, db) for b, db in zip(rho_blocks, drho_blocks)]
    dim = sum(p.shape[0] for p in parts)
    out = np.zeros((dim, dim), dtype=complex)
    k = 0
    for p in parts:
        m = p.shape[0]
        out[k:k + m, k:k + m] = p
        k += m
    return out


def model_family(params: ModelParams, wrt: str, h: float = DEFAULT_STEP) -> StateFamily:
    """One-parameter family of model states varying ``wrt`` with the rest fixed.

    Evaluation does not validate the parameter range so that central
    differences may step just outside the closed domain.
    """
    if wrt not in ("theta", "phi", "p", "q", "r"):
        raise ValueError(f"unknown parameter {wrt!r}")

    def evaluate(x):
        kw = dict(theta=params.theta, phi=params.phi, p=params.p, q=params.q, r=params.r)
        kw[wrt] = x
        m = model_entries(**kw)
        return m / np.trace(m).real

    return StateFamily(evaluate, h)


def model_sld(params: ModelParams, wrt: str = "theta", h: float = DEFAULT_STEP):
    """SLD of the model state in the computational basis, with rho and d rho."""
    fam = model_family(params, wrt, h)
    rho = fam.evaluate(getattr(params, wrt))
    drho = fam.derivative(getattr(params, wrt))
    rb = [rho[np.ix_(b, b)] for b in MODEL_BLOCKS]
    db = [drho[np.ix_(b, b)] for b in MODEL_BLOCKS]
    lb = block_sld(rb, db)
    perm = [i for b in MODEL_BLOCKS for i in b]
    sld = np.zeros((4, 4), dtype=complex)
    sld[np.ix_(perm, perm)] = lb
    return sld, rho, drho


def qfi_block(params: ModelParams, wrt: str = "theta", h: float = DEFAULT_STEP) -> QfiResult:
    """Tr(rho L^2) with L from ``block_sld``."""
    sld, rho, _ = model_sld(params, wrt, h)
    f = np.trace(rho @ sld @ sld).real
    support = int(np.sum(eig_hermitian(rho).eigenvalues > SUPPORT_TOL))
    return QfiResult(_clamp(f), "block_sld", support)


def qfi_weight_closed(params: ModelParams) -> float:
    """Closed-form weight-parameter QFI F_theta(theta, p, q, r)."""
    return float(weight_qfi_array(params.theta, params.p, params.q, params.r))


def qfi_weight_q0(theta: float, p: float) -> float:
    """F_theta with no reversal; independent of r."""
    return float((4 - 4 * p) / (np.cos(theta) * p - p + 2) ** 2)


def qfi_phase_closed(params: ModelParams) -> float:
    """Closed-form phase-parameter QFI F_phi(theta, p, q, r)."""
    th, r = params.theta, params.r
    if min(abs(th), abs(th - np.pi)) <= 1e-12:
        raise SingularTheta("phase QFI closed form is singular at theta in {0, pi}")
    pb, qb = 1 - params.p, 1 - params.q
    t2 = np.tan(th / 2) ** 2
    c2r, s2r = np.cos(r) ** 2, np.sin(r) ** 2
    sh2 = np.sin(th / 2) ** 2
    num = (
        -2 * pb * qb * c2r
        * (np.cos(2 * r) * (np.cos(th) - 1) * pb - pb - 2 * qb + (pb - 2 * qb) * np.cos(th))
        * t2
    )
    den = (2 * pb * c2r * sh2 + 2 * pb * qb * s2r * sh2 + qb + qb * np.cos(th)) * (pb * c2r * t2 + qb) ** 2
    return float(num / den)


def optimal_value(theta: float) -> float:
    """Optimal weight QFI 1/sin^2(theta), common to every optimum below."""
    return float(1 / np.sin(theta) ** 2)


def optimal_p_q0(theta: float):
    """Best pre-measurement strength without reversal: (p_opt, F_opt)."""
    c = np.cos(theta)
    if c == 1:
        raise NoOptimum("theta = 0")
    p_opt = 2 * c / (c - 1)
    if -1e-12 < p_opt < 0:  # cos(pi/2) round-off
        p_opt = 0.0
    if not 0 <= p_opt < 1:
        raise NoOptimum(f"p_opt={p_opt:.6g} outside [0, 1)")
    return float(p_opt), optimal_value(theta)


def optimal_r_argument(theta: float, p: float, q: float) -> float:
    """Argument of arccos in the optimal-acceleration formula (inf when q or p make it undefined)."""
    s2, c2 = np.sin(theta / 2) ** 2, np.cos(theta / 2) ** 2
    den = q * (1 - p) * s2
    if den == 0:
        return np.inf
    return float((((q - 2) * p - 3 * q + 4) * c2 - (q - 2) * (-1 + p)) / den)


def optimal_r_p0_argument(theta: float, q: float) -> float:
    """Same argument written for p = 0."""
    s2 = np.sin(theta / 2) ** 2
    den = 2 * q * s2
    if den == 0:
        return np.inf
    return float(((4 * q - 8) * s2 - q * np.cos(theta) - 3 * q + 4) / den)


def _r_from_argument(arg: float) -> Optional[float]:
    if not -1 <= arg <= 1:
        return None
    r = float(np.arccos(arg) / 2)
    return r if 0 <= r <= np.pi / 4 else None


def optimal_r(theta: float, p: float, q: float) -> Optional[float]:
    """Acceleration maximizing F_theta, or None when no physical optimum exists."""
    if min(abs(theta), abs(theta - np.pi)) <= 1e-12:
        raise ParamOutOfRange("theta must lie strictly inside (0, pi)")
    if not (0 <= p < 1 and 0 <= q < 1):
        raise ParamOutOfRange("p and q must lie in [0, 1)")
    return _r_from_argument(optimal_r_argument(theta, p, q))


def optimal_r_p0(theta: float, q: float) -> Optional[float]:
    return _r_from_argument(optimal_r_p0_argument(theta, q))


def optimal_p(q: float, r: float, theta: float) -> Optional[float]:
    """Pre-measurement strength maximizing F_theta (theta > pi/2), or None."""
    if not np.pi / 2 < theta < np.pi:
        raise ParamOutOfRange("optimal_p requires pi/2 < theta < pi")
    c2r = np.cos(2 * r)
    den = q * c2r - q + 2
    p_opt = (q * c2r + 2 * (q - 1) / np.sin(theta / 2) ** 2 - 3 * q + 4) / den
    return float(p_opt) if 0 <= p_opt < 1 else None


def optimal_q(p: float, r: float, theta: float) -> Optional[float]:
    """Reversal strength maximizing F_theta (theta < pi/2), or None."""
    if not 0 < theta < np.pi / 2:
        raise ParamOutOfRange("optimal_q requires 0 < theta < pi/2")
    den = 2 * (p - 1) * np.cos(2 * r) * np.sin(theta / 2) ** 2 + (p - 3) * np.cos(theta) - p - 1
    q_opt = (2 * (p - 2) * np.cos(theta) - 2 * p) / den
    return float(q_opt) if 0 <= q_opt < 1 else None


def grid_argmax(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, step: float = 1e-4):
    """Brute-force maximizer of a vectorized f on [lo, hi]; ties go to the smallest argument."""
    xs = np.arange(lo, hi + step / 2, step)
    xs = xs[xs <= hi]
    ys = f(xs)
    k = int(np.argmax(ys))
    return float(xs[k]), float(ys[k])


def weight_qfi_array(theta, p, q, r):
    """Vectorized closed-form F_theta for grid searches (no range validation)."""
    theta, p, q, r = np.broadcast_arrays(*(np.asarray(v, float) for v in (theta, p, q, r)))
    pb, qb = 1 - p, 1 - q
    num = -8 * qb * pb * (-qb + (qb - 1) * np.cos(2 * r) - 1)
    den = (
        -(2 * qb - 2) * pb * np.cos(2 * r) * np.sin(theta / 2) ** 2
        + pb + qb * pb + 2 * qb
        - (qb * pb + pb - 2 * qb) * np.cos(theta)
    ) ** 2
    return num / den
