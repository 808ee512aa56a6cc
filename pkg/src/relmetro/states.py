"""Two-qubit states: probe preparation, Pauli decomposition, steering geometry."""
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonOrthonormalBasis,
    ParamOutOfRange,
    SingularMarginal,
    ZeroProbability,
)
from .linalg_core import (
    I2,
    PAULI,
    as_matrix,
    check_density_matrix,
    eig_hermitian,
    partial_trace,
    projector,
)

ALICE_PURE_TOL = 1e-9
ZERO_PROB_TOL = 1e-12


@dataclass(frozen=True)
class PauliDecomposition:
    a: np.ndarray  # Alice Bloch vector
    b: np.ndarray  # Rob Bloch vector
    T: np.ndarray  # T[i, j] = Tr(rho sigma_i (x) sigma_j)

    def to_matrix(self) -> np.ndarray:
        """Rebuild rho = (1/4) sum Theta_{mu nu} sigma_mu (x) sigma_nu."""
        rho = np.kron(I2, I2).astype(complex)
        for j, s in enumerate(PAULI):
            rho = rho + self.a[j] * np.kron(s, I2) + self.b[j] * np.kron(I2, s)
            for k, t in enumerate(PAULI):
                rho = rho + self.T[j, k] * np.kron(s, t)
        return rho / 4


@dataclass(frozen=True)
class Ellipsoid:
    center: np.ndarray
    semiaxes: np.ndarray  # descending
    axes: np.ndarray      # axes[:, k] pairs with semiaxes[k]

    def contains(self, x, tol: float = 1e-8) -> bool:
        """Whether a Bloch vector lies inside or on the ellipsoid."""
        d = self.axes.T @ (np.asarray(x, float) - self.center)
        # degenerate directions must carry no displacement
        flat = self.semiaxes <= tol
        if np.any(np.abs(d[flat]) > tol):
            return False
        s = self.semiaxes[~flat]
        dd = d[~flat]
        # scaled-radius test, with the tolerance measured in Bloch-ball units
        rad = np.sqrt(np.sum((dd / s) ** 2)) if s.size else 0.0
        return bool(rad <= 1 or (rad - 1) * np.min(s, initial=1.0) <= tol)


@dataclass(frozen=True)
class XState:
    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex
    rho23: complex

    def __post_init__(self):
        diag = (self.rho11, self.rho22, self.rho33, self.rho44)
        if min(diag) < 0 or abs(sum(diag) - 1) > 1e-12:
            raise ValueError("X-state diagonal must be nonnegative and sum to 1")
        if abs(self.rho14) ** 2 > self.rho11 * self.rho44 + 1e-12:
            raise ValueError("|rho14|^2 exceeds rho11*rho44")
        if abs(self.rho23) ** 2 > self.rho22 * self.rho33 + 1e-12:
            raise ValueError("|rho23|^2 exceeds rho22*rho33")

    @classmethod
    def from_matrix(cls, rho, tol: float = 1e-12) -> "XState":
        r = as_matrix(rho)
        mask = np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]], bool)
        if np.max(np.abs(r[mask])) > tol:
            raise ValueError("matrix is not an X-state")
        return cls(r[0, 0].real, r[1, 1].real, r[2, 2].real, r[3, 3].real, complex(r[0, 3]), complex(r[1, 2]))

    def to_matrix(self) -> np.ndarray:
        r = np.diag([self.rho11, self.rho22, self.rho33, self.rho44]).astype(complex)
        r[0, 3], r[3, 0] = self.rho14, np.conj(self.rho14)
        r[1, 2], r[2, 1] = self.rho23, np.conj(self.rho23)
        return r


def initial_state(theta: float, phi: float) -> np.ndarray:
    """Projector onto sin(theta/2)|00> + cos(theta/2) e^{i phi}|11>."""
    if not 0 <= theta <= np.pi:
        raise ParamOutOfRange(f"theta={theta} outside [0, pi]")
    if not 0 <= phi <= 2 * np.pi:
        raise ParamOutOfRange(f"phi={phi} outside [0, 2pi]")
    psi = np.array([np.sin(theta / 2), 0, 0, np.cos(theta / 2) * np.exp(1j * phi)])
    return projector(psi)


def pauli_decomposition(rho) -> PauliDecomposition:
    r = as_matrix(rho)
    a = np.array([np.trace(r @ np.kron(s, I2)).real for s in PAULI])
    b = np.array([np.trace(r @ np.kron(I2, s)).real for s in PAULI])
    T = np.array([[np.trace(r @ np.kron(s, t)).real for t in PAULI] for s in PAULI])
    return PauliDecomposition(a, b, T)


def steering_ellipsoid(rho) -> Ellipsoid:
    """Rob's steering ellipsoid: center and semiaxes from Alice's marginal and T."""
    d = pauli_decomposition(rho)
    a, b, T = d.a, d.b, d.T
    a2 = float(a @ a)
    if np.sqrt(a2) >= 1 - ALICE_PURE_TOL:
        raise SingularMarginal("Alice's marginal is pure; ellipsoid undefined")
    den = 1 - a2
    center = (b - T.T @ a) / den
    q = (T.T - np.outer(b, a)) @ (np.eye(3) + np.outer(a, a) / den) @ (T - np.outer(a, b)) / den
    q = (q + q.T) / 2
    dec = eig_hermitian(q)
    w = np.where(dec.eigenvalues < 0, 0.0, dec.eigenvalues)  # values in (-1e-10, 0) are round-off
    return Ellipsoid(center, np.sqrt(w[::-1]), dec.eigenvectors[:, ::-1].real)


def steered_state(rho, e):
    """State Rob is steered to when Alice obtains POVM outcome ``e``.

    Returns ``(rho_b, probability)``.
    """
    r = as_matrix(rho)
    e = as_matrix(e)
    joint = r @ np.kron(e, I2)
    prob = float(np.trace(joint).real)
    if prob < ZERO_PROB_TOL:
        raise ZeroProbability(f"outcome probability {prob:.3e}")
    return partial_trace(joint, "A") / prob, prob


def steered_bloch_vectors(rho, directions) -> np.ndarray:
    """Bloch vectors of Rob's state for Alice projectors (I + n.sigma)/2, one per row of ``directions``.

    Vectorized equivalent of ``steered_state`` restricted to projective elements.
    """
    d = pauli_decomposition(rho)
    n = np.atleast_2d(np.asarray(directions, float))
    norm = 1 + n @ d.a
    if np.any(norm / 2 < ZERO_PROB_TOL):
        raise ZeroProbability("an Alice projector has vanishing probability")
    return (d.b + n @ d.T) / norm[:, None]


def bloch_vector(rho2) -> np.ndarray:
    r = as_matrix(rho2)
    return np.array([np.trace(r @ s).real for s in PAULI])


def coherence(rho2, basis=None) -> float:
    """l1 coherence of a qubit state in an orthonormal basis (columns or pair of vectors)."""
    r = as_matrix(rho2)
    if basis is None:
        u = np.eye(2, dtype=complex)
    else:
        u = np.column_stack([np.asarray(x, complex) for x in basis])
    if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise NonOrthonormalBasis("basis vectors are not orthonormal")
    m = u.conj().T @ r @ u
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def basis_from_direction(n) -> tuple:
    """Orthonormal qubit basis whose Bloch vectors are +n and -n."""
    n = np.asarray(n, float)
    n = n / np.linalg.norm(n)
    w = eig_hermitian(sum(c * s for c, s in zip(n, PAULI)))
    return w.eigenvectors[:, 1], w.eigenvectors[:, 0]


def random_density_matrix(rng, dim: int = 4, rank: int = None) -> np.ndarray:
    """Mixture of random pure states (weights from a flat Dirichlet)."""
    k = dim if rank is None else rank
    psi = rng.normal(size=(k, dim)) + 1j * rng.normal(size=(k, dim))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    w = rng.dirichlet(np.ones(k))
    rho = sum(wi * projector(p) for wi, p in zip(w, psi))
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_xstate(rng) -> XState:
    d = rng.dirichlet(np.ones(4))
    r14 = np.sqrt(d[0] * d[3]) * rng.uniform() * np.exp(1j * rng.uniform(0, 2 * np.pi))
    r23 = np.sqrt(d[1] * d[2]) * rng.uniform() * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return XState(*d, r14, r23)


__all__ = [
    "PauliDecomposition",
    "Ellipsoid",
    "XState",
    "initial_state",
    "pauli_decomposition",
    "steering_ellipsoid",
    "steered_state",
    "steered_bloch_vectors",
    "bloch_vector",
    "coherence",
    "basis_from_direction",
    "random_density_matrix",
    "random_xstate",
    "check_density_matrix",
]
