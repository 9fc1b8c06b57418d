import numpy as np
import pytest
from scipy import linalg

import component.scripts as scripts

from .conftest import chain


@pytest.fixture
def homogeneous():
    """20 cavities, atom on site 11"""
    return chain(20, 0.1)


def test_ladders():

    left, right = scripts.localized_frequencies(20, 11, 0.1, 7.5)

    assert len(left) == 10 and len(right) == 9
    assert np.all(np.diff(left) > 0)
    assert left.max() == pytest.approx(7.5 + 0.2 * np.cos(np.pi / 11))
    assert 7.5 in np.round(right, 12)

    with pytest.raises(scripts.ConfigError):
        scripts.localized_frequencies(20, 21, 0.1, 7.5)


@pytest.mark.parametrize("g", [0.06, 0.12])
def test_qubit_on_a_ladder_value_hides_one_side(homogeneous, g):

    model = scripts.LatticeModel(homogeneous, scripts.CouplingProfile({11: g}))
    left, right = scripts.localized_frequencies(20, 11, 0.1, 7.5)

    for omega_q, sign in [(left[3], 1), (right[2], -1)]:
        values, vectors = linalg.eigh(model.hamiltonian(omega_q))
        Q = [scripts.chirality_quantifier(vectors[:, m], 11, 20) for m in range(21)]
        localized = np.argmax(sign * np.array(Q))

        assert sign * Q[localized] == pytest.approx(1.0, abs=1e-8)
        assert values[localized] == pytest.approx(omega_q, abs=1e-10)


def test_chirality_quantifier():

    psi = np.zeros(6)
    psi[[0, 1]] = [0.6, 0.8]
    assert scripts.chirality_quantifier(psi, 3) == pytest.approx(1.0)

    psi = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 0.0])
    assert scripts.chirality_quantifier(psi, 3) == pytest.approx(-1.0)

    # the qubit amplitude does not count
    psi = np.array([0.5, 0.0, 0.5, 0.0, 0.0, 5.0])
    assert scripts.chirality_quantifier(psi, 1, N=5) == pytest.approx(0.0)

    with pytest.raises(scripts.NumericError):
        scripts.chirality_quantifier(np.r_[np.zeros(5), 1.0], 2, N=5)


def test_green_function_matches_resolvent(homogeneous):

    H = scripts.tight_binding_matrix(homogeneous)
    Omega, d = linalg.eigh(H)
    z = np.array([7.1 + 0.01j, 7.95])

    green = scripts.bath_green(Omega, d, z, [(3, 3), (3, 8)])

    for k, zk in enumerate(z):
        resolvent = linalg.inv(zk * np.eye(20) - H)
        np.testing.assert_allclose(green.values[k], [resolvent[2, 2], resolvent[2, 7]])

    with pytest.raises(scripts.NumericError):
        green.evaluate(Omega[4], d[:, 0], d[:, 0])

    with pytest.raises(scripts.ConfigError):
        scripts.bath_green(Omega, d, z, [(0, 3)])


def test_giant_atom_shift_places_the_bound_state(homogeneous):

    profile = scripts.CouplingProfile.gaussian(10, 3, 1.0, 0.05)
    model = scripts.LatticeModel(homogeneous, profile)
    Omega, d = linalg.eigh(model.cavity_hamiltonian())

    chi = scripts.effective_cavity(profile, 20)
    omega_BS = 7.5 + 0.2 * np.cos(3 * np.pi / 10)
    green = scripts.bath_green(Omega, d, [omega_BS], [(10, 10)])

    omega_q = scripts.giant_atom_shift(chi, green, omega_BS)
    assert chi.gbar == pytest.approx(profile.gbar)

    # the mode at omega_BS is most one-sided at the predicted qubit frequency
    grid = omega_q + 1e-3 * np.arange(-20, 21)
    Q = []
    for x in grid:
        values, vectors = linalg.eigh(model.hamiltonian(x))
        m = np.argmin(np.abs(values - omega_BS))
        Q.append(abs(scripts.chirality_quantifier(vectors[:, m], 10, 20)))

    best = int(np.argmax(Q))
    assert abs(grid[best] - omega_q) <= 1e-3
    assert Q[best] >= 1 - 1e-6


def test_chirality_is_antisymmetric_under_mirroring(homogeneous):

    model = scripts.LatticeModel(homogeneous, scripts.CouplingProfile({7: 0.08}))
    mirrored = scripts.LatticeModel(homogeneous, scripts.CouplingProfile({14: 0.08}))

    for omega_q in (7.43, 7.61):
        _, vectors = linalg.eigh(model.hamiltonian(omega_q))
        _, images = linalg.eigh(mirrored.hamiltonian(omega_q))
        for m in range(21):
            Q = scripts.chirality_quantifier(vectors[:, m], 7, 20)
            image = scripts.chirality_quantifier(images[:, m], 13, 20)
            assert Q == pytest.approx(-image, abs=1e-9)


def test_node_condition_diagnostic(homogeneous):

    model = scripts.LatticeModel(homogeneous, scripts.CouplingProfile({11: 0.001}))
    basis = scripts.mode_basis(model.cavity_hamiltonian(), model.coupling, 7.5)
    left, _ = scripts.localized_frequencies(20, 11, 0.1, 7.5)

    omega = left[2]
    m0 = int(np.argmin(np.abs(basis.Omega - omega)))
    result = scripts.node_condition_diagnostic(basis, omega)

    assert result["m0"] == m0 + 1
    # distance from the localized frequency to its quasi-resonant bare mode
    assert result["ratio"] == pytest.approx(abs(basis.G[m0]) / abs(omega - basis.Omega[m0]))
    assert result["ok"] == (result["ratio"] < 0.1)

    # a weaker atom relaxes the condition in proportion
    weak = scripts.mode_basis(model.cavity_hamiltonian(), model.coupling / 10, 7.5)
    assert scripts.node_condition_diagnostic(weak, omega)["ratio"] == pytest.approx(
        result["ratio"] / 10
    )

    on_mode = scripts.node_condition_diagnostic(basis, basis.Omega[5])
    assert on_mode["ratio"] == np.inf and not on_mode["ok"]


def test_chirality_map(homogeneous):

    model = scripts.LatticeModel(homogeneous, scripts.CouplingProfile({11: 0.06}))
    df = scripts.chirality_map(model, np.linspace(7.3, 7.7, 5), workers=2)

    assert len(df) == 5 * 21
    assert list(df.columns) == ["omega_q", "m", "omega", "Q"]
    assert df.Q.between(-1 - 1e-12, 1 + 1e-12).all()
