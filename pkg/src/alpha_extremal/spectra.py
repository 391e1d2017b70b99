"""A_alpha and signless Laplacian matrices, and their dominant eigenpairs.

The production solver is a shifted power iteration (deterministic, all-ones
start).  :func:`full_spectrum_oracle` is an independent cyclic Jacobi
eigensolver used only to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError, is_connected

# Convergence constants for dominant_eigpair.
RAYLEIGH_TOL = 1e-13      # relative change of successive Rayleigh quotients
RESIDUAL_TOL = 1e-10      # ||M x - rho x||_2
MAX_ITERATIONS = 1_000_000
POLISH_PATIENCE = 3       # extra non-improving iterations before stopping

JACOBI_OFF_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
ORACLE_MAX_N = 16


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (last residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    perron: np.ndarray
    iterations: int
    residual: float

    def __post_init__(self):
        self.perron.setflags(write=False)


def check_alpha(alpha: float, *, allow_one: bool = True) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha <= 1.0) or (not allow_one and alpha == 1.0):
        upper = "1]" if allow_one else "1)"
        raise ValueError(f"alpha must lie in [0, {upper}, got {alpha!r}")
    return alpha


def build_a_alpha(g: Graph, alpha: float) -> np.ndarray:
    """alpha * D(G) + (1 - alpha) * A(G) as a dense symmetric array."""
    alpha = check_alpha(alpha)
    m = (1.0 - alpha) * g.adjacency_matrix()
    m[np.diag_indices(g.n)] = [alpha * d for d in g.degrees]
    return m


def build_signless_laplacian(g: Graph) -> np.ndarray:
    q = g.adjacency_matrix()
    q[np.diag_indices(g.n)] = g.degrees
    return q


def dominant_eigpair(m: np.ndarray, connected: bool = True) -> SpectralResult:
    """Largest eigenvalue of a symmetric nonnegative matrix by shifted power iteration.

    Iterates on ``m + sigma*I`` with ``sigma = 1 + max(diag)``; because the
    smallest eigenvalue of a symmetric nonnegative matrix is at least
    ``-rho``, the shifted top eigenvalue is strictly dominant in modulus.
    With ``connected=True`` the returned vector is the positive Perron vector.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    if np.any(m < 0):
        raise ValueError("matrix has negative entries")
    n = m.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    sigma = 1.0 + float(np.max(np.diag(m)))
    x = np.full(n, 1.0 / math.sqrt(n))
    prev = None
    residual = math.inf
    for it in range(1, MAX_ITERATIONS + 1):
        y = m @ x
        rho = float(x @ y)
        residual = float(np.linalg.norm(y - rho * x))
        if (prev is not None and abs(rho - prev) <= RAYLEIGH_TOL * (1.0 + abs(rho))
                and residual <= RESIDUAL_TOL):
            break
        prev = rho
        z = y + sigma * x
        x = z / np.linalg.norm(z)
    else:
        raise ConvergenceError("power iteration did not converge", residual, MAX_ITERATIONS)

    # polish down to the rounding floor so ties between relabelings agree to the ulp
    best = (residual, rho, x, it)
    stale = 0
    while stale < POLISH_PATIENCE and it < MAX_ITERATIONS:
        z = y + sigma * x
        x = z / np.linalg.norm(z)
        it += 1
        y = m @ x
        rho = float(x @ y)
        residual = float(np.linalg.norm(y - rho * x))
        stale = 0 if residual < best[0] else stale + 1
        if residual <= best[0]:
            best = (residual, rho, x, it)
    residual, rho, x, it = best
    if connected and np.min(x) <= 0.0:
        raise ConvergenceError("Perron vector is not positive", residual, it)
    return SpectralResult(rho, x, it, residual)


def alpha_spectral_radius(g: Graph, alpha: float) -> SpectralResult:
    """rho_alpha(G) and its Perron vector for a connected graph, 0 <= alpha < 1."""
    alpha = check_alpha(alpha, allow_one=False)
    if not is_connected(g):
        raise GraphError("A_alpha Perron pair requires a connected graph")
    return dominant_eigpair(build_a_alpha(g, alpha), connected=True)


def spectral_radius_any(g: Graph, alpha: float) -> float:
    """rho_alpha for a graph that may be disconnected (max over components)."""
    alpha = check_alpha(alpha, allow_one=False)
    return dominant_eigpair(build_a_alpha(g, alpha), connected=is_connected(g)).radius


def signless_laplacian_radius(g: Graph) -> float:
    if not is_connected(g):
        raise GraphError("signless Laplacian radius requires a connected graph")
    return dominant_eigpair(build_signless_laplacian(g), connected=True).radius


def full_spectrum_oracle(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if n > ORACLE_MAX_N:
        raise ValueError(f"oracle supports n <= {ORACLE_MAX_N}, got {n}")
    if not np.allclose(a, a.T, rtol=0, atol=1e-14):
        raise ValueError("matrix is not symmetric")

    offdiag = ~np.eye(n, dtype=bool)

    def off_norm() -> float:
        return math.sqrt(float(np.sum(a[offdiag] ** 2)))

    for _ in range(JACOBI_MAX_SWEEPS):
        if off_norm() <= JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) + 1e3 * abs(apq) == abs(h):
                    t = apq / h   # small-angle limit, avoids overflow in theta
                else:
                    theta = h / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    else:
        if off_norm() > JACOBI_OFF_TOL:
            raise ConvergenceError("Jacobi sweeps did not converge", off_norm(), JACOBI_MAX_SWEEPS)
    return np.sort(np.diag(a))


def batch_top_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of each symmetric matrix in an ``(N, n, n)`` stack (LAPACK)."""
    if len(stack) == 0:
        return np.empty(0)
    return np.linalg.eigvalsh(stack)[:, -1]
