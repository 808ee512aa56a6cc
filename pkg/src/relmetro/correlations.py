"""Skew information, local quantum uncertainty and maximal steered coherence."""
import numpy as np

from .channels import ModelParams, normalization
from .errors import (
    DegenerateMarginal,
    NonHermitianObservable,
    ParamOutOfRange,
    SingularMarginal,
    ZeroNormalization,
)
from .linalg_core import I2, PAULI, as_matrix, eig_hermitian, is_hermitian, sqrt_psd
from .states import XState, pauli_decomposition, steered_bloch_vectors


def skew_information(rho, obs) -> float:
    """Wigner-Yanase skew information -Tr([sqrt(rho), O]^2) / 2."""
    o = as_matrix(obs)
    if not is_hermitian(o):
        raise NonHermitianObservable("observable is not Hermitian")
    s = sqrt_psd(rho)
    c = s @ o - o @ s
    return max(float(-np.trace(c @ c).real / 2), 0.0)


def variance(rho, obs) -> float:
    r, o = as_matrix(rho), as_matrix(obs)
    return float(np.trace(r @ o @ o).real - np.trace(r @ o).real ** 2)


def w_matrix(rho) -> np.ndarray:
    """W_ij = Tr[sqrt(rho) (sigma_i (x) I) sqrt(rho) (sigma_j (x) I)]."""
    s = sqrt_psd(rho)
    ops = [np.kron(p, I2) for p in PAULI]
    w = np.array([[np.trace(s @ a @ s @ b).real for b in ops] for a in ops])
    return (w + w.T) / 2


def lqu_numeric(rho) -> float:
    """LQU on Alice's qubit: 1 - largest eigenvalue of the W matrix."""
    lam = eig_hermitian(w_matrix(rho)).eigenvalues[-1]
    return float(min(max(1 - lam, 0.0), 1.0))


def lqu_closed_terms(params: ModelParams):
    """(W1, W2) of the closed-form LQU for the model state."""
    th, r = params.theta, params.r
    pb, qb = 1 - params.p, 1 - params.q
    n = normalization(params)
    if n <= 1e-12:
        raise ZeroNormalization(f"normalization {n:.3e}")
    t2 = np.tan(th / 2) ** 2
    c2r, s2r = np.cos(r) ** 2, np.sin(r) ** 2
    k = pb * c2r * t2 + qb
    kt = qb - pb * c2r * t2
    w1 = (
        np.sin(r) * np.sin(th / 2)
        * np.sqrt(pb * qb ** 3 * (
            -np.cos(th) * (pb * np.cos(2 * r) + pb - 2 * qb) + pb * np.cos(2 * r) + pb + 2 * qb
        ))
        / (n * k)
    )
    l1 = qb ** 2 * (pb + 2 * qb) - pb * np.cos(2 * r) * (np.cos(th) - 1) * kt ** 2
    l2 = -(pb - 2 * qb) * np.cos(th) * kt ** 2 + pb * (pb + 2 * qb) * c2r * t2 * (pb * c2r * t2 - 2 * qb)
    l3 = 4 * pb * qb * s2r * np.sin(th / 2) ** 2 * k ** 2
    w2 = (l1 + l2 + l3) / (4 * n * k ** 2)
    return float(w1), float(w2)


def lqu_closed(params: ModelParams) -> float:
    w1, w2 = lqu_closed_terms(params)
    return 1 - max(w1, w2)


def msc_xstate(x: XState) -> float:
    """(|rho23| + |rho14|) / sqrt((rho11 + rho22)(rho33 + rho44))."""
    den = (x.rho11 + x.rho22) * (x.rho33 + x.rho44)
    if den <= 1e-14:
        raise DegenerateMarginal("Alice's marginal is pure")
    return float((abs(x.rho23) + abs(x.rho14)) / np.sqrt(den))


def msc_model_closed(q: float, r: float) -> float:
    """MSC of the model state, 1 / sqrt(q + (1 - q) sec^2 r)."""
    if not 0 <= q < 1:
        raise ParamOutOfRange(f"q={q} outside [0, 1)")
    if not 0 <= r <= np.pi / 4:
        raise ParamOutOfRange(f"r={r} outside [0, pi/4]")
    return float(1 / np.sqrt(q + (1 - q) / np.cos(r) ** 2))


def fibonacci_sphere(n: int) -> np.ndarray:
    """n roughly uniform unit vectors (golden-angle spiral)."""
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    rad = np.sqrt(1 - z * z)
    ang = np.pi * (3 - np.sqrt(5)) * k
    return np.column_stack([rad * np.cos(ang), rad * np.sin(ang), z])


def msc_from_directions(rho, alice_dirs, rob_dirs) -> float:
    """inf over Rob basis axes m of max over Alice projectors of the steered coherence.

    A qubit's l1 coherence in the basis with Bloch axis m is the length of the
    Bloch-vector component orthogonal to m.
    """
    if np.linalg.norm(pauli_decomposition(rho).a) >= 1 - 1e-9:
        raise SingularMarginal("Alice's marginal is pure")
    b = steered_bloch_vectors(rho, alice_dirs)          # (nE, 3)
    m = np.atleast_2d(np.asarray(rob_dirs, float))
    m = m / np.linalg.norm(m, axis=1, keepdims=True)   # (nB, 3)
    along = b @ m.T                                    # (nE, nB)
    perp2 = np.sum(b * b, axis=1)[:, None] - along ** 2
    coh = np.sqrt(np.clip(perp2, 0, None))
    return float(np.min(np.max(coh, axis=0)))


def rob_eigenbasis_axes(rho, n_basis: int = 2048, tol: float = 1e-9) -> np.ndarray:
    """Bloch axes of the eigenbases of Rob's reduced state.

    A unique axis when Rob's Bloch vector is nonzero; otherwise every basis is
    an eigenbasis and a hemisphere grid is returned.
    """
    b = pauli_decomposition(rho).b
    nb = np.linalg.norm(b)
    if nb > tol:
        return (b / nb)[None, :]
    grid = fibonacci_sphere(2 * n_basis)
    return grid[grid[:, 2] >= 0]  # m and -m define the same basis


def msc_bruteforce(rho, n_dirs: int = 4096, n_basis: int = 2048) -> float:
    """Maximal steered coherence by direct search over Alice's projective measurements.

    Coherence is taken in the eigenbasis of Rob's reduced state, with the
    infimum over a direction grid when that state is maximally mixed.
    """
    if n_dirs < 32:
        raise ValueError("n_dirs must be >= 32")
    return msc_from_directions(rho, fibonacci_sphere(n_dirs), rob_eigenbasis_axes(rho, n_basis))
