import numpy as np
import pytest

import component.scripts as scripts

from .conftest import chain


def test_fft_peak_of_a_cosine():

    taus = np.arange(0, 500, 4.0)
    values = np.vstack([np.cos(2 * np.pi * f * taus) for f in (0.01, 0.05)])

    result = scripts.fft_map(values, taus, columns=[7.9, 8.0])
    resolution = result.frequencies[1]

    np.testing.assert_allclose(result.peaks(), [0.01, 0.05], atol=resolution)
    assert result.n_fft == 4 * len(taus)
    assert result.to_frame().shape == (2 * len(result.frequencies), 3)


def test_fft_energy_with_rectangular_window(rng):

    taus = np.arange(64) * 0.5
    values = rng.normal(size=(3, 64))

    result = scripts.fft_map(values, taus, window="rectangular", pad=1)
    processed = values - values.mean(axis=1, keepdims=True)

    np.testing.assert_allclose(result.energy(), (processed**2).sum(axis=1), rtol=1e-10)

    odd = scripts.fft_map(values[:, :63], taus[:63], window="rectangular", pad=1)
    np.testing.assert_allclose(
        odd.energy(), ((values[:, :63] - values[:, :63].mean(axis=1, keepdims=True)) ** 2).sum(axis=1), rtol=1e-10
    )


def test_fft_map_input_checks():

    with pytest.raises(scripts.ConfigError):
        scripts.fft_map(np.ones(10), np.arange(10.0))

    taus = np.r_[np.arange(20.0), 21.0]
    with pytest.raises(scripts.ConfigError):
        scripts.fft_map(np.ones(21), taus)

    with pytest.raises(scripts.ConfigError):
        scripts.fft_map(np.ones(32), np.arange(32.0), window="blackman")


def test_transition_overlay():

    model = scripts.LatticeModel(chain(4, 0.1), scripts.CouplingProfile({2: 0.02}))
    spectrum = scripts.sweep_and_track(model.hamiltonian, np.linspace(7.3, 7.7, 5))

    df = scripts.transition_overlay(spectrum)

    assert set(df.order) == {1, 2}
    assert len(df) == 5 * 4 + 5 * 3
    assert (df.transition > 0).all()


def test_spectrogram_of_a_tone():

    t = np.arange(0, 1000, 1.0)
    record = np.exp(2j * np.pi * 0.03 * t)

    result = scripts.spectrogram(record, dt=1.0, window=200.0, step=10.0)

    assert result.frequencies.min() < 0
    np.testing.assert_allclose(result.ridge(), 0.03, atol=1 / 200)
    assert result.times[0] == pytest.approx(99.5)
    assert len(result.times) == len(range(0, 1000 - 200 + 1, 10))


def test_spectrogram_follows_a_chirp():

    t = np.arange(0, 2000, 1.0)
    rate = 5e-5
    record = np.cos(2 * np.pi * (0.05 * t + rate * t**2 / 2))

    result = scripts.spectrogram(record, dt=1.0, window=200.0, step=20.0, pad=4)
    slope = np.polyfit(result.times, result.ridge(), 1)[0]

    assert result.frequencies.min() == 0
    assert slope == pytest.approx(rate, rel=0.05)


def test_spectrogram_needs_a_full_window():

    with pytest.raises(scripts.ConfigError):
        scripts.spectrogram(np.ones(100), dt=1.0, window=200.0)


def test_uncoupled_qubit_leaves_the_array_transmission():

    model = scripts.LatticeModel(chain(4, 0.1), scripts.CouplingProfile({1: 1e-9}))
    lm = scripts.LossModel(kappa_ext_L=0.01, kappa_ext_R=0.01)
    omega_p = np.linspace(7.2, 7.8, 301)

    result = scripts.transmission_map(model, lm, omega_p, [8.5, 9.0, 9.5], workers=2)
    ridges = result.ridges()
    modes = np.linalg.eigvalsh(scripts.tight_binding_matrix(chain(4, 0.1)))

    step = omega_p[1] - omega_p[0]
    for row in ridges:
        np.testing.assert_allclose(row, ridges[0])
        np.testing.assert_allclose(row, modes, atol=2 * step)

    assert result.magnitude.max() <= 1 + 1e-9
    assert result.to_frame().shape == (3 * 301, 3)

    with pytest.raises(scripts.ConfigError):
        scripts.transmission_map(model, lm, omega_p[::-1], [8.5])
