"""Small-dimension complex linear algebra (dim 2 and 4).

Eigendecomposition uses cyclic complex Jacobi rotations; at these sizes a
handful of sweeps reaches machine precision and needs no external solver.
"""
from typing import NamedTuple

import numpy as np

from .errors import InvalidState, NegativeEigenvalue, NonHermitianInput

EPS_MAT = 1e-12
HERMITIAN_TOL = 1e-10
CLAMP_TOL = 1e-12
NEG_EIG_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # columns, orthonormal

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (1, 2, 3, 4):
        raise ValueError(f"expected a square matrix of dim <= 4, got shape {a.shape}")
    return a


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = np.asarray(h)
    return bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= tol)


def allclose(x, y, tol: float = EPS_MAT) -> bool:
    """Entrywise max-norm comparison with an absolute tolerance."""
    return bool(np.max(np.abs(np.asarray(x) - np.asarray(y)), initial=0.0) <= tol)


def eig_hermitian(h, max_sweeps: int = 50) -> EigenDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    a = as_matrix(h)
    if not is_hermitian(a):
        raise NonHermitianInput("matrix is not Hermitian within 1e-10")
    n = a.shape[0]
    a = (a + a.conj().T) / 2
    v = np.eye(n, dtype=complex)
    scale = max(np.max(np.abs(a)), 1e-300)

    for _ in range(max_sweeps):
        off = np.sum(np.abs(np.triu(a, 1)) ** 2)
        if off <= (1e-17 * scale) ** 2:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= 1e-20 * scale:
                    continue
                phase = apq / g
                # rotation zeroing the (p, q) element of the phase-reduced real block
                theta = (a[q, q].real - a[p, p].real) / (2 * g)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[q, q] = c
                j[p, q] = s * phase
                j[q, p] = -s * np.conj(phase)
                a = j.conj().T @ a @ j
                a[p, q] = a[q, p] = 0
                v = v @ j

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def check_density_matrix(rho, dims=(2, 4)) -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    r = as_matrix(rho)
    if r.shape[0] not in dims:
        raise InvalidState(f"density matrix must have dim in {dims}, got {r.shape[0]}")
    if not is_hermitian(r, EPS_MAT):
        raise InvalidState("density matrix is not Hermitian")
    if abs(np.trace(r) - 1) > EPS_MAT:
        raise InvalidState(f"trace {np.trace(r).real!r} != 1")
    if eig_hermitian(r).eigenvalues[0] < -NEG_EIG_TOL:
        raise InvalidState("density matrix has a negative eigenvalue")
    return r


def sqrt_psd(rho) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix."""
    dec = eig_hermitian(rho)
    w = dec.eigenvalues
    if w[0] < -NEG_EIG_TOL:
        raise NegativeEigenvalue(f"eigenvalue {w[0]:.3e} below -1e-10")
    w = np.where(w < CLAMP_TOL, 0.0, w)
    v = dec.eigenvectors
    return (v * np.sqrt(w)) @ v.conj().T


def kron(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != (2, 2) or y.shape != (2, 2):
        raise ValueError("kron expects two 2x2 matrices")
    return np.kron(x, y)


def partial_trace(rho, subsystem: str) -> np.ndarray:
    """Reduce a two-qubit operator; ``subsystem`` names the factor traced out.

    Ordering is |a> (x) |b> with A the left factor.
    """
    r = as_matrix(rho)
    if r.shape != (4, 4):
        raise ValueError("partial_trace expects a 4x4 matrix")
    t = r.reshape(2, 2, 2, 2)  # a, b, a', b'
    if subsystem == "B":
        return np.einsum("ijkj->ik", t)
    if subsystem == "A":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def ket(*amps) -> np.ndarray:
    return np.asarray(amps, dtype=complex)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())
