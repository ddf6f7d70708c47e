"""Finite-dimensional modular theory on standard pairs.

The algebra is M_n acting by left multiplication on the Hilbert-Schmidt
space H = M_n(C) (identified with C^{n^2} by row-major vec, so the action
of a is kron(a, 1)).  The cyclic vector is Omega = vec(sqrt(rho)) for a
full-rank density matrix rho.

The closure of S(a Omega) = a* Omega is computed generically: the linear
map T = C S (C = componentwise conjugation) is assembled from its action
on the matrix-unit basis and polar-decomposed as T = U P, giving the
antiunitary J = C U and Delta^(1/2) = P.  In the eigenbasis of rho the
closed forms are Delta = kron(rho, conj(rho)^{-1}) and J = conjugate-swap;
``tomita_operators`` verifies its generic solve against them before
returning.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NotStandard

_INTERNAL_TOL = 1e-10


@dataclass(frozen=True)
class StandardPair:
    """M_n with a cyclic separating vector built from a density matrix."""

    n: int
    rho: np.ndarray
    omega: np.ndarray

    @staticmethod
    def from_rho(rho: np.ndarray) -> "StandardPair":
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionMismatch("rho must be a square matrix")
        n = rho.shape[0]
        if not np.allclose(rho, rho.conj().T, atol=1e-12):
            raise NotStandard("rho must be Hermitian")
        evals = np.linalg.eigvalsh(rho)
        if evals.min() <= 1e-12:
            raise NotStandard("rho must be positive definite (full rank)")
        if abs(np.trace(rho).real - 1.0) > 1e-10:
            raise NotStandard("rho must have unit trace")
        omega = _sqrtm_psd(rho).reshape(-1)
        return StandardPair(n, rho, omega)


def _sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh(rho)
    return (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T


@dataclass(frozen=True)
class AntiUnitary:
    """An antiunitary operator, stored as (unitary, conjugation flag).

    Application is v -> matrix @ conj(v) when the flag is set; composing
    two such operators multiplies matrix_1 @ conj(matrix_2) and clears
    the flag.
    """

    matrix: np.ndarray
    conjugate: bool = True

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ (np.conj(v) if self.conjugate else v)

    def sandwich(self, A: np.ndarray) -> np.ndarray:
        """Matrix of J A J^{-1} (equal to J A J when J is an involution)."""
        if not self.conjugate:
            return self.matrix @ A @ self.matrix.conj().T
        return self.matrix @ np.conj(A) @ np.conj(self.matrix)


@dataclass(frozen=True)
class ModularData:
    J: AntiUnitary
    delta: np.ndarray


def check_standard(n: int, omega: np.ndarray) -> dict:
    """Cyclicity and separation of a unit vector for M_n (x) 1.

    In this finite-dimensional setting both reduce to full rank of the
    n x n reshape of the vector.
    """
    omega = np.asarray(omega, dtype=complex)
    if omega.shape != (n * n,):
        raise DimensionMismatch(f"omega must have length {n * n}")
    rank = np.linalg.matrix_rank(omega.reshape(n, n), tol=1e-10)
    return {"cyclic": bool(rank == n), "separating": bool(rank == n)}


def left_mult(a: np.ndarray) -> np.ndarray:
    """Matrix of X -> aX on vec'd Hilbert-Schmidt space."""
    n = a.shape[0]
    return np.kron(a, np.eye(n))


def right_mult(b: np.ndarray) -> np.ndarray:
    """Matrix of X -> Xb; these span the commutant of the left action."""
    n = b.shape[0]
    return np.kron(np.eye(n), b.T)


def tomita_operators(pair: StandardPair) -> ModularData:
    """Solve S(a Omega) = a* Omega over a basis and polar-decompose.

    Raises NotStandard if Omega is not cyclic and separating.  The result
    is verified against the closed forms before being returned.
    """
    n = pair.n
    flags = check_standard(n, pair.omega)
    if not (flags["cyclic"] and flags["separating"]):
        raise NotStandard("Omega is not cyclic and separating")
    sq = pair.omega.reshape(n, n)
    W = np.zeros((n * n, n * n), dtype=complex)
    Wp = np.zeros_like(W)
    col = 0
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1.0
            W[:, col] = (E @ sq).reshape(-1)
            Wp[:, col] = np.conj((E.conj().T @ sq).reshape(-1))
            col += 1
    T = Wp @ np.linalg.inv(W)
    U, P = scipy.linalg.polar(T, side="right")
    data = ModularData(AntiUnitary(U), P @ P)

    # internal consistency against the closed forms
    rho_inv = np.linalg.inv(pair.rho)
    delta_exact = np.kron(pair.rho, np.conj(rho_inv))
    if np.abs(data.delta - delta_exact).max() > _INTERNAL_TOL * _scale(delta_exact):
        raise NotStandard("generic modular operator disagrees with the closed form")
    swap = _swap_matrix(n)
    if np.abs(U - swap).max() > _INTERNAL_TOL:
        raise NotStandard("generic modular conjugation disagrees with conj-swap")
    return data


def _scale(A: np.ndarray) -> float:
    return max(1.0, float(np.abs(A).max()))


def _swap_matrix(n: int) -> np.ndarray:
    """vec(X) -> vec(X^T)."""
    K = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            K[i * n + j, j * n + i] = 1.0
    return K


def delta_power(data: ModularData, z: complex) -> np.ndarray:
    """Delta^z by eigendecomposition (z may be complex: i t, i t - 1, ...)."""
    evals, vecs = np.linalg.eigh(data.delta)
    return (vecs * np.power(evals.astype(complex), z)) @ vecs.conj().T


def modular_flow(pair: StandardPair, data: ModularData, a: np.ndarray,
                 t: float) -> np.ndarray:
    """sigma_t(a (x) 1) = Delta^{it} (a (x) 1) Delta^{-it}, as an n^2 matrix."""
    if a.shape != (pair.n, pair.n):
        raise DimensionMismatch("flowed matrix must be n x n")
    Dz = delta_power(data, 1j * t)
    Dzi = delta_power(data, -1j * t)
    return Dz @ left_mult(np.asarray(a, dtype=complex)) @ Dzi


def left_factor(M: np.ndarray, n: int) -> np.ndarray:
    """Best b with M ~ kron(b, 1) (partial trace over the right factor)."""
    M4 = M.reshape(n, n, n, n)
    return np.einsum("ikjk->ij", M4) / n


def left_subspace_distance(M: np.ndarray, n: int) -> float:
    """Frobenius distance from M to the left-multiplication subspace."""
    b = left_factor(M, n)
    return float(np.linalg.norm(M - np.kron(b, np.eye(n))))


def right_subspace_distance(M: np.ndarray, n: int) -> float:
    M4 = M.reshape(n, n, n, n)
    c = np.einsum("kikj->ij", M4) / n
    return float(np.linalg.norm(M - np.kron(np.eye(n), c)))


def check_commutant(pair: StandardPair, data: ModularData, samples: int,
                    rng: np.random.Generator, tolerance: float = 1e-12) -> dict:
    """J M J lands in the commutant: vanishing commutators with the left
    action and vanishing distance to the right-multiplication subspace."""
    n = pair.n
    worst_comm = 0.0
    worst_dist = 0.0
    for _ in range(samples):
        a = _random_matrix(n, rng)
        b = _random_matrix(n, rng)
        JA = data.J.sandwich(left_mult(a))
        B = left_mult(b)
        worst_comm = max(worst_comm, float(np.abs(JA @ B - B @ JA).max()))
        worst_dist = max(worst_dist, right_subspace_distance(JA, n))
    return {"max_commutator": worst_comm, "max_subspace_distance": worst_dist,
            "pass": worst_comm <= tolerance and worst_dist <= tolerance}


def check_flow_invariance(pair: StandardPair, data: ModularData, samples: int,
                          rng: np.random.Generator, ts=(0.35, 1.0),
                          tolerance: float = 1e-12) -> dict:
    """The modular flow preserves M_n (x) 1."""
    worst = 0.0
    for _ in range(samples):
        a = _random_matrix(pair.n, rng)
        for t in ts:
            flowed = modular_flow(pair, data, a, t)
            worst = max(worst, left_subspace_distance(flowed, pair.n))
    return {"max_subspace_distance": worst, "pass": worst <= tolerance}


def vector_state(pair: StandardPair, A: np.ndarray) -> complex:
    return complex(np.vdot(pair.omega, A @ pair.omega))


def check_kms(pair: StandardPair, data: ModularData, samples: int,
              rng: np.random.Generator, ts=(0.0, 0.5, 1.0),
              tolerance: float = 1e-11) -> dict:
    """The beta = 1 KMS boundary condition of the modular flow:

        omega(a sigma_{t-i}(b)) = omega(sigma_t(b) a),

    with the analytic continuation computed by exact matrix functional
    calculus.  (For the orientation sigma_t = Delta^{it} . Delta^{-it}
    used here, the continuation that closes the identity is t - i on the
    left factor; equivalently omega(sigma_{t+i}(b) a) = omega(a sigma_t(b)).
    The opposite flow orientation places +i on the left instead.  The
    eigenbasis derivation is pinned in the tests.)
    """
    worst = 0.0
    for _ in range(samples):
        a = left_mult(_random_matrix(pair.n, rng))
        b = left_mult(_random_matrix(pair.n, rng))
        for t in ts:
            Dz = delta_power(data, 1j * t + 1.0)
            Dzi = delta_power(data, -1j * t - 1.0)
            shifted = Dz @ b @ Dzi
            Dt = delta_power(data, 1j * t)
            Dti = delta_power(data, -1j * t)
            flowed = Dt @ b @ Dti
            lhs = vector_state(pair, a @ shifted)
            rhs = vector_state(pair, flowed @ a)
            worst = max(worst, abs(lhs - rhs))
    return {"max_kms_defect": worst, "pass": worst <= tolerance}


def _random_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a / np.linalg.norm(a)


def random_density_matrix(n: int, rng: np.random.Generator,
                          floor: float = 0.2) -> np.ndarray:
    """Seeded full-rank density matrix with a controlled condition number."""
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = A @ A.conj().T
    H = H + floor * (np.trace(H).real / n) * np.eye(n)
    return H / np.trace(H).real
