import numpy as np
import pytest

import component.scripts as scripts

from .conftest import chain, toy_lattice


def test_small_atom_couplings():

    model = toy_lattice(N=6, J=0.2, g=0.03, site=2)
    basis = scripts.mode_basis(model.cavity_hamiltonian(), model.coupling, 7.4)

    np.testing.assert_allclose(basis.G, 0.03 * basis.d[1], atol=1e-15)
    assert basis.omega_q == 7.4
    np.testing.assert_allclose(basis.Delta, basis.Omega - 7.4)


def test_center_site_selection_rule():

    # odd chain, atom on the central site: antisymmetric modes stay dark
    model = scripts.LatticeModel(chain(5, 0.1), scripts.CouplingProfile({3: 0.02}))
    basis = scripts.mode_basis(model.cavity_hamiltonian(), model.coupling, 8.0)

    np.testing.assert_allclose(basis.G[[1, 3]], 0, atol=1e-15)
    assert np.all(np.abs(basis.G[[0, 2, 4]]) > 1e-3)


def test_superstrong_metrics():

    avg_coupling, avg_splitting = scripts.superstrong_metrics([1.0, 1.0, -1.0], [0, 1, 3])

    np.testing.assert_allclose(avg_coupling, [1.0, 0.5])
    np.testing.assert_allclose(avg_splitting, [1.0, 2 / 3, 0.5])

    avg_coupling, avg_splitting = scripts.superstrong_metrics([1.0, 1.0], [2.0, 2.0])
    assert np.isinf(avg_coupling).all() and np.isinf(avg_splitting).all()

    with pytest.raises(scripts.ConfigError):
        scripts.superstrong_metrics([1.0, 1.0], [2.0, 1.0])


def test_basis_table(golden_lattice):

    basis = scripts.mode_basis(
        golden_lattice.cavity_hamiltonian(), golden_lattice.coupling, 8.1
    )
    df = basis.to_frame()

    assert len(df) == 44
    assert np.isnan(df.coupling_per_splitting.iloc[0])
    assert df.n.tolist() == list(range(1, 45))


def hellmann_feynman_error(step):

    model = toy_lattice(N=2, J=1.0, g=0.05)
    grid = np.arange(8.3, 8.7 + step / 2, step)
    spectrum = scripts.sweep_and_track(model.hamiltonian, grid)

    direct = scripts.participation_direct(spectrum)
    derivative = scripts.participation_hellmann_feynman(spectrum)

    return np.abs(derivative - direct)[1:-1].max()


def test_hellmann_feynman_agrees_with_weights():

    coarse = hellmann_feynman_error(1e-3)
    fine = hellmann_feynman_error(2.5e-4)

    assert coarse <= 1e-3
    assert coarse / fine >= 4


def test_dressed_transitions():

    omega = np.array([[3.0, 1.0, 2.5], [0.0, 1.0, 3.0]])

    np.testing.assert_allclose(scripts.dressed_transitions(omega), [[1.5, 0.5], [1, 2]])
    np.testing.assert_allclose(scripts.dressed_transitions(omega, 2), [[2.0], [3.0]])

    with pytest.raises(scripts.ConfigError):
        scripts.dressed_transitions(omega, 3)


def test_max_interaction_spacing_matches_vacuum_rabi_splitting():

    g = 0.05
    model = toy_lattice(N=2, J=1.0, g=g)
    grid = np.linspace(8.4, 8.6, 201)
    spectrum = scripts.sweep_and_track(model.hamiltonian, grid)

    df = scripts.max_interaction_spacing(spectrum)
    resonant = df.loc[df.m == 2].iloc[0]

    # the upper mode has amplitude 1/sqrt(2) on the coupled site
    G = g / np.sqrt(2)
    assert resonant.omega_q == pytest.approx(8.5, abs=0.01)
    assert resonant.spacing == pytest.approx(scripts.jaynes_cummings_frequency(G), rel=0.01)


def test_jaynes_cummings_frequency():

    assert scripts.jaynes_cummings_frequency(0.1) == pytest.approx(0.2)
    assert scripts.jaynes_cummings_frequency(0.1, 0.3) == pytest.approx(np.sqrt(0.13))


def test_mode_couplings_preserve_the_collective_coupling(golden_lattice):

    Omega, d = np.linalg.eigh(golden_lattice.cavity_hamiltonian())
    G = scripts.mode_couplings(golden_lattice.coupling, d)

    assert np.sum(G**2) == pytest.approx(golden_lattice.profile.gbar**2, rel=1e-12)
