"""Singular values by one-sided (Hestenes) Jacobi orthogonalisation."""

from __future__ import annotations

import numpy as np

MAX_SWEEPS = 10_000


class ConvergenceError(RuntimeError):
    pass


def jacobi_svd(a, tol: float = 1e-15, max_sweeps: int = MAX_SWEEPS):
    """Return ``(W, V)`` with ``a @ V = W``, V orthogonal, W's columns mutually orthogonal.

    The singular values are the column norms of W.  Works on the orientation
    with at least as many rows as columns.
    """
    a = np.array(a, dtype=np.float64)
    u = a.copy()
    n = u.shape[1]
    v = np.eye(n)
    for _ in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = u[:, i] @ u[:, i]
                beta = u[:, j] @ u[:, j]
                gamma = u[:, i] @ u[:, j]
                if abs(gamma) <= tol * np.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                ui, uj = u[:, i].copy(), u[:, j]
                u[:, i] = c * ui - s * uj
                u[:, j] = s * ui + c * uj
                vi, vj = v[:, i].copy(), v[:, j]
                v[:, i] = c * vi - s * vj
                v[:, j] = s * vi + c * vj
        if not rotated:
            return u, v
    raise ConvergenceError(f"Jacobi SVD did not converge in {max_sweeps} sweeps")


def singular_values(a, rtol: float = 1e-10) -> np.ndarray:
    """Singular values in decreasing order; checks the factorisation residual."""
    a = np.array(a, dtype=np.float64)
    if a.shape[0] < a.shape[1]:
        a = a.T
    if a.size == 0:
        return np.zeros(0)
    w, v = jacobi_svd(a)
    fro = np.linalg.norm(a)
    residual = np.linalg.norm(a - w @ v.T)
    if residual > rtol * max(fro, np.finfo(float).tiny):
        raise ConvergenceError(f"SVD residual {residual:.3e} exceeds {rtol:g} * |a|_F")
    return np.sort(np.linalg.norm(w, axis=0))[::-1]
