"""50/50 beam splitter acting on a single-mode state plus vacuum.

The output of exp[i*pi/4*(a^dag b + a b^dag)] on |n>_a |0>_b is spread over
the anti-diagonal p + k = n of a two-mode amplitude matrix phi[p, k] with
weights 2^(-n/2) * C(n, p)^(1/2) * i^(n-p).  The i^(n-p) factor is the pi/2
phase of the reflected arm; it makes a coherent input come out as the exact
product |alpha/sqrt(2)>_c |i*alpha/sqrt(2)>_d and, being a local phase on
mode d, cannot change any entanglement quantity computed downstream.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .fock import CutoffPolicy, FockVector, InitialStateSpec, build_initial_state
from .kerr import kerr_evolve

__all__ = ["output_at_time", "split_with_vacuum"]

_I_POW = np.array([1.0, 1.0j, -1.0, -1.0j])  # i^k for k mod 4
_LN2 = math.log(2.0)


def split_with_vacuum(state: FockVector) -> np.ndarray:
    """Map c_n |n>|0> through the splitter into phi[p, k], k = n - p.

    Unitary: the Frobenius norm of phi equals the input norm, and the
    support stays on the anti-diagonals p + k = n of the input levels.
    """
    c = state.amplitudes
    dim = len(c)
    lgfact = gammaln(np.arange(dim) + 1.0)
    phi = np.zeros((dim, dim), dtype=complex)
    for n in range(dim):
        if c[n] == 0.0:
            continue
        p = np.arange(n + 1)
        sqrt_binom = np.exp(0.5 * (lgfact[n] - lgfact[p] - lgfact[n - p] - n * _LN2))
        phi[p, n - p] = c[n] * sqrt_binom * _I_POW[(n - p) % 4]
    return phi


def output_at_time(
    initial: InitialStateSpec,
    tau: float,
    n_cut: int | None = None,
    policy: CutoffPolicy = CutoffPolicy(),
) -> np.ndarray:
    """Two-mode amplitude matrix after Kerr evolution for tau revival units
    followed by the 50/50 splitter with vacuum in the second port."""
    state = build_initial_state(initial, n_cut=n_cut, policy=policy)
    return split_with_vacuum(kerr_evolve(state, tau))
