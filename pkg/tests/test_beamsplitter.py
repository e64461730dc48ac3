import math

import numpy as np
from scipy.special import gammaln

from kerrsplit.beamsplitter import output_at_time, split_with_vacuum
from kerrsplit.entanglement import entanglement_entropy
from kerrsplit.fock import (
    FockVector,
    InitialStateSpec,
    _coherent_amplitudes,
    choose_cutoff,
    coherent_state,
    fock_state,
)


def split_without_reflection_phase(state):
    """Splitter variant that drops the i^(n-p) local phase (test-only route
    for the local-phase-insensitivity check)."""
    c = state.amplitudes
    dim = len(c)
    lgfact = gammaln(np.arange(dim) + 1.0)
    phi = np.zeros((dim, dim), dtype=complex)
    for n in range(dim):
        p = np.arange(n + 1)
        w = np.exp(0.5 * (lgfact[n] - lgfact[p] - lgfact[n - p] - n * math.log(2.0)))
        phi[p, n - p] = c[n] * w
    return phi


def test_vacuum_in_vacuum_out():
    phi = split_with_vacuum(fock_state(0, 4))
    assert phi[0, 0] == 1.0
    assert np.count_nonzero(phi) == 1


def test_coherent_input_gives_exact_product_state():
    n_cut = choose_cutoff(5.0, 0)
    st = coherent_state(InitialStateSpec(nu=5.0), n_cut)
    phi = split_with_vacuum(st)
    alpha = InitialStateSpec(nu=5.0).alpha
    c_mode = _coherent_amplitudes(alpha / math.sqrt(2.0), n_cut)
    d_mode = _coherent_amplitudes(1j * alpha / math.sqrt(2.0), n_cut)
    product = np.outer(c_mode, d_mode)
    # the truncated coherent input is renormalized, so compare up to one scale
    scale = np.linalg.norm(phi) / np.linalg.norm(product)
    # the splitter output lives on anti-diagonals p+k <= n_cut, so the product
    # comparison holds up to the truncated corner mass (~tail_tol level)
    assert np.max(np.abs(phi - scale * product)) < 1e-8
    assert entanglement_entropy(phi) < 1e-10


def test_single_photon_split():
    phi = split_with_vacuum(fock_state(1, 3))
    assert abs(abs(phi[1, 0]) - 1.0 / math.sqrt(2.0)) < 1e-15
    assert abs(abs(phi[0, 1]) - 1.0 / math.sqrt(2.0)) < 1e-15
    # reflected arm carries the pi/2 phase
    assert abs(phi[0, 1] / phi[1, 0] - 1j) < 1e-15


def test_fock5_binomial_row():
    phi = split_with_vacuum(fock_state(5, 8))
    for p in range(6):
        want = math.comb(5, p) / 32.0
        assert abs(abs(phi[p, 5 - p]) ** 2 - want) < 1e-14
    assert abs(np.linalg.norm(phi) - 1.0) < 1e-12


def test_unitarity_on_random_states():
    rng = np.random.default_rng(11)
    for _ in range(5):
        amps = rng.normal(size=12) + 1j * rng.normal(size=12)
        st = FockVector(amps / np.linalg.norm(amps))
        phi = split_with_vacuum(st)
        assert abs(np.linalg.norm(phi) - 1.0) < 1e-12


def test_photon_number_conservation():
    st = fock_state(4, 6)
    phi = split_with_vacuum(st)
    for p in range(7):
        for k in range(7):
            if p + k != 4:
                assert phi[p, k] == 0.0


def test_exchange_symmetry_of_magnitudes():
    st = coherent_state(InitialStateSpec(nu=3.0), choose_cutoff(3.0, 0))
    phi = split_with_vacuum(st)
    assert np.max(np.abs(np.abs(phi) - np.abs(phi).T)) < 1e-14


def test_reflection_phase_cannot_change_entanglement():
    spec = InitialStateSpec(nu=5.0)
    n_cut = choose_cutoff(5.0, 0)
    from kerrsplit.kerr import kerr_evolve

    state = kerr_evolve(coherent_state(spec, n_cut), 0.37)
    with_phase = split_with_vacuum(state)
    without_phase = split_without_reflection_phase(state)
    assert abs(entanglement_entropy(with_phase) - entanglement_entropy(without_phase)) < 1e-12


def test_output_at_time_full_revival_matches_t0():
    spec = InitialStateSpec(nu=5.0)
    a = output_at_time(spec, 0.0)
    b = output_at_time(spec, 1.0)
    assert np.array_equal(a, b)


def test_output_at_time_zero_field_pacs_is_fixed_binomial_row():
    # Kerr phase is global on |5>, so any tau gives the same magnitudes
    for tau in (0.0, 0.3, 0.77):
        phi = output_at_time(InitialStateSpec(nu=0.0, m=5), tau)
        for p in range(6):
            assert abs(abs(phi[p, 5 - p]) ** 2 - math.comb(5, p) / 32.0) < 1e-14


def test_output_at_time_rank_one_at_t0():
    phi = output_at_time(InitialStateSpec(nu=5.0), 0.0)
    s = np.linalg.svd(phi, compute_uv=False)
    assert s[0] > 1.0 - 1e-12
    assert s[1] < 1e-8  # truncated corner mass
    assert entanglement_entropy(phi) < 1e-10


def test_output_respects_requested_cutoff():
    phi = output_at_time(InitialStateSpec(nu=1.0), 0.5, n_cut=25)
    assert phi.shape == (26, 26)
