"""Entanglement measures for two-mode states.

Pure states are handled through the singular values of the amplitude matrix
phi (the squared singular values are the Schmidt spectrum, i.e. the
eigenvalues of either reduced density matrix); mixed states go through the
partial transpose of the 4-index density matrix rho[m1, m2, n1, n2].
Entropies are in bits (log base 2).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "entanglement_entropy",
    "log_negativity",
    "partial_transpose",
    "pure_state_log_negativity",
    "pure_to_density",
    "schmidt_spectrum",
    "von_neumann_entropy",
]

# Schmidt weights below this are pure roundoff; 0*log(0) -> 0.
_ENTROPY_FLOOR = 1e-15
# eigenvalue magnitudes below this are dropped from the trace norm
_TRACE_NORM_FLOOR = 1e-12


def schmidt_spectrum(phi: np.ndarray) -> np.ndarray:
    """Squared singular values of phi, descending."""
    s = np.linalg.svd(np.asarray(phi, dtype=complex), compute_uv=False)
    return s * s


def von_neumann_entropy(lambdas: np.ndarray) -> float:
    """-sum(lam * log2 lam) over the spectrum, skipping the 0*log(0) limit."""
    lam = np.asarray(lambdas, dtype=float)
    lam = lam[lam > _ENTROPY_FLOOR]
    return float(-np.sum(lam * np.log2(lam)))


def entanglement_entropy(phi: np.ndarray) -> float:
    """Entropy of entanglement (ebits) of a pure two-mode amplitude matrix."""
    return von_neumann_entropy(schmidt_spectrum(phi))


def pure_to_density(phi: np.ndarray) -> np.ndarray:
    """Rank-1 density matrix rho[m1,m2,n1,n2] = phi[m1,m2] * conj(phi[n1,n2])."""
    phi = np.asarray(phi, dtype=complex)
    if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise ValueError(f"phi must be square, got shape {phi.shape}")
    d = phi.shape[0]
    v = phi.reshape(-1)
    return np.outer(v, v.conj()).reshape(d, d, d, d)


def partial_transpose(rho: np.ndarray, mode: str = "c") -> np.ndarray:
    """Transpose one mode of rho[m1,m2,n1,n2]: mode c swaps (m1, n1), mode d
    swaps (m2, n2).  An involution; the result is Hermitian but in general
    not positive."""
    if mode in ("c", 0):
        return np.ascontiguousarray(np.swapaxes(rho, 0, 2))
    if mode in ("d", 1):
        return np.ascontiguousarray(np.swapaxes(rho, 1, 3))
    raise ValueError(f"mode must be 'c' or 'd', got {mode!r}")


def _flatten(rho: np.ndarray) -> np.ndarray:
    d1, d2 = rho.shape[0], rho.shape[1]
    return rho.reshape(d1 * d2, d1 * d2)


def log_negativity(rho: np.ndarray, mode: str = "c") -> float:
    """log2 of the trace norm of the partial transpose, clipped at 0.

    For a Hermitian operator the trace norm is the sum of absolute
    eigenvalues; magnitudes below 1e-12 are discarded as roundoff.
    """
    eig = np.linalg.eigvalsh(_flatten(partial_transpose(rho, mode)))
    mags = np.abs(eig)
    trace_norm = float(mags[mags > _TRACE_NORM_FLOOR].sum())
    if trace_norm <= 0.0:
        return 0.0
    return max(float(np.log2(trace_norm)), 0.0)


def pure_state_log_negativity(phi: np.ndarray) -> float:
    """Closed form for pure states: E_N = 2 * log2(sum of singular values)."""
    s = np.linalg.svd(np.asarray(phi, dtype=complex), compute_uv=False)
    return max(float(2.0 * np.log2(s.sum())), 0.0)
