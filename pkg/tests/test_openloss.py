import numpy as np
import pandas as pd
import pytest
from scipy import linalg
from sepal_ui.scripts.warning import SepalWarning

import component.parameter as param
import component.scripts as scripts

from .conftest import chain


@pytest.fixture
def truth():
    return scripts.ReflectionTraceParams(
        omega_m=7.9,
        gamma_ext_L=4e-3,
        gamma_ext_R=6e-3,
        gamma_int=2e-3,
        A_L=0.8,
        alpha_L=0.3,
        phi_L=0.1,
        A_R=1.1,
        alpha_R=-0.5,
        phi_R=-0.2,
    )


def test_loss_matrix_layout():

    lm = scripts.LossModel(
        kappa_int=1.0, kappa_q=5.0, kappa_ext_L=4.0, kappa_ext_Lp=1.0, kappa_ext_R=9.0
    )
    K = lm.loss_matrix(4)

    np.testing.assert_array_equal(K, K.T)
    np.testing.assert_allclose(np.diag(K), [5.0, 2.0, 1.0, 10.0, 5.0])
    assert K[0, 1] == pytest.approx(2 * np.sqrt(4.0 * 1.0))
    assert K[2, 3] == 0

    np.testing.assert_allclose(np.diag(lm.loss_matrix(4, part="internal")), [1, 1, 1, 1, 5])
    np.testing.assert_allclose(lm.loss_matrix(4, qubit=False, part="R")[3, 3], 9.0)
    assert lm.loss_matrix(4, qubit=False).shape == (4, 4)

    with pytest.raises(scripts.ConfigError):
        lm.loss_matrix(4, part="ports")

    with pytest.raises(scripts.ConfigError):
        scripts.LossModel(kappa_int=-1.0)


def test_cross_term_makes_the_ports_indefinite():

    lm = scripts.LossModel(kappa_ext_L=1e-2, kappa_ext_Lp=1e-4)

    with pytest.warns(SepalWarning):
        assert lm.check_positive(10) < 0

    assert lm.with_rates(cross_factor=1.0).check_positive(10) > -1e-15


def test_uniform_internal_loss():

    H = scripts.tight_binding_matrix(chain(10, 0.1))
    rates = scripts.extract_mode_rates(H, scripts.LossModel(kappa_int=1e-3), qubit=False)

    np.testing.assert_allclose(rates.gamma_tot, 1e-3, rtol=1e-10)
    np.testing.assert_allclose(rates.gamma_int, 1e-3, rtol=1e-10)
    np.testing.assert_allclose(rates.gamma_ext_L, 0, atol=1e-15)


def test_weak_losses_add_up():

    H = scripts.tight_binding_matrix(chain(10, 0.1))
    lm = scripts.LossModel(kappa_int=1e-6, kappa_ext_L=1e-5, kappa_ext_R=2e-5)
    rates = scripts.extract_mode_rates(H, lm, qubit=False)

    assert rates.additivity.max() < 1e-3
    np.testing.assert_allclose(
        rates.gamma_tot, scripts.perturbative_rates(H, lm, qubit=False), rtol=1e-3
    )

    df = rates.to_frame()
    assert list(df.columns) == ["m", "omega", *scripts.RATE_NAMES, "chi_db"]


def test_mirror_symmetric_ports(golden_lattice):

    H = scripts.tight_binding_matrix(chain(10, 0.1))
    lm = scripts.LossModel(kappa_ext_L=1e-3, kappa_ext_R=1e-3)
    rates = scripts.extract_mode_rates(H, lm, qubit=False)

    np.testing.assert_allclose(rates.gamma_ext_L, rates.gamma_ext_R, rtol=1e-6)
    np.testing.assert_allclose(rates.chi_db, 0, atol=1e-4)

    # qubit included: one rate per dressed mode
    golden = scripts.extract_mode_rates(golden_lattice.hamiltonian(8.1), lm)
    assert golden.gamma_tot.shape == (45,)


def test_reflection_fit_is_exact_without_noise(truth):

    omega = np.linspace(7.9 - 0.12, 7.9 + 0.12, 801)
    S_LL, S_RR = scripts.reflection_spectrum(truth, omega)

    fitted, result = scripts.fit_reflection(omega, S_LL, S_RR)

    assert result.success
    for name in ["omega_m", "gamma_ext_L", "gamma_ext_R", "gamma_int", "A_L", "A_R"]:
        assert getattr(fitted, name) == pytest.approx(getattr(truth, name), rel=1e-5)


def test_reflection_round_trip_with_noise(truth, rng):

    omega = np.linspace(7.9 - 0.12, 7.9 + 0.12, 801)
    S_LL, S_RR = scripts.reflection_spectrum(truth, omega)

    def noisy(trace):
        noise = rng.normal(0, 0.01, (2, len(trace)))
        return trace + noise[0] + 1j * noise[1]

    fitted, _ = scripts.fit_reflection(omega, noisy(S_LL), noisy(S_RR))

    assert fitted.omega_m == pytest.approx(truth.omega_m, rel=1e-4)
    for name in ["gamma_ext_L", "gamma_ext_R", "gamma_int"]:
        assert getattr(fitted, name) == pytest.approx(getattr(truth, name), rel=0.05)


def test_reflection_baseline_must_be_positive():

    with pytest.raises(scripts.ConfigError):
        scripts.ReflectionTraceParams(7.9, 1e-3, 1e-3, 1e-3, A_L=0.0)


def test_disorder_ensemble_arguments():

    tb, lm = chain(10, 0.1), scripts.LossModel(kappa_int=1e-3, kappa_ext_L=1e-2)

    with pytest.raises(scripts.ConfigError):
        scripts.disorder_ensemble(tb, lm, 0.02, 50, seed=1)

    with pytest.raises(scripts.ConfigError):
        scripts.disorder_ensemble(tb, lm, 0.02, 100, seed=None)


def test_disorder_ensemble_ignores_the_worker_count():

    tb = chain(10, 0.1)
    lm = scripts.LossModel(kappa_int=1e-3, kappa_ext_L=1e-2, kappa_ext_R=1e-2)

    serial = scripts.disorder_ensemble(tb, lm, 0.02, 100, seed=5, workers=1)
    pooled = scripts.disorder_ensemble(tb, lm, 0.02, 100, seed=5, workers=3)

    pd.testing.assert_frame_equal(serial, pooled)
    assert len(serial) == 10
    assert (serial.gamma_tot_low <= serial.gamma_tot_mean).all()
    assert (serial.gamma_tot_mean <= serial.gamma_tot_high).all()


@pytest.mark.slow
def test_golden_disorder_ensemble(golden_tb):

    lm = scripts.LossModel(**param.LOSS).with_rates(cross_factor=1.0)
    df = scripts.disorder_ensemble(golden_tb, lm, param.DISORDER_SIGMA, 200, seed=0)

    assert len(df) == 44
    assert (df.gamma_int_high - df.gamma_int_low).abs().max() < 1e-6
    assert (df.gamma_ext_L_high >= df.gamma_ext_L_low).all()


def test_drive_line_limit():

    df = scripts.purcell_budget([5.0, 9.5], param.DRIVE_LINE, param.READOUT)

    assert df.T1_drive.tolist() == pytest.approx([4.936, 1.367], rel=1e-3)
    assert df.attrs["failures"] == []


def test_readout_limit_across_the_measurement_band():

    df = scripts.purcell_budget(np.linspace(7.0, 9.3, 24), param.DRIVE_LINE, param.READOUT)

    assert (df.T1_readout > 10).all()
    # the readout channel fades away from the resonator
    assert df.T1_readout.is_monotonic_increasing

    # close to the resonator it is the limiting channel
    near = scripts.purcell_budget([5.0], param.DRIVE_LINE, param.READOUT)
    assert near.T1_readout.iloc[0] == pytest.approx(1.63, rel=0.01)


def test_purcell_resonance_is_reported():

    df = scripts.purcell_budget([4.5, 4.6, 4.7], param.DRIVE_LINE, param.READOUT)

    assert np.isnan(df.readout.iloc[1]) and np.isnan(df.total.iloc[1])
    assert np.isfinite(df.drive).all()
    assert len(df.attrs["failures"]) == 1


def test_purcell_array_channel():

    cca = {"Omega": [7.0, 8.0], "G": [0.01, 0.02], "gamma_int": 1e-3, "gamma_ext": 1e-2}
    df = scripts.purcell_budget([7.5], param.DRIVE_LINE, param.READOUT, cca)

    expected = 0.011 * ((0.01 / 0.5) ** 2 + (0.02 / 0.5) ** 2)
    assert df.cca.iloc[0] == pytest.approx(expected)
    assert df.total.iloc[0] == pytest.approx(df.drive[0] + df.readout[0] + expected)


STARK_MODE = {
    "omega_m": 8.3,
    "gamma_ext_port": 11e-3,
    "gamma_ext_other": 13.7e-3,
    "gamma_int": 590e-6,
    "chi": -498e-6,
}


def test_stark_shift_is_linear_with_constant_losses():

    P = np.array([1e-9, 2e-9, 4e-9])
    n, omega = scripts.ac_stark_model(P, 70.0, omega_q0=7.56, **STARK_MODE)

    np.testing.assert_allclose(n / n[0], [1, 2, 4])
    np.testing.assert_allclose(omega, 7.56 + 2 * STARK_MODE["chi"] * n)


def test_stark_fixed_point_with_tabulated_losses():

    model = {**STARK_MODE, "gamma_int": ((0.0, 10.0), (1e-3, 5e-4))}
    n, _ = scripts.ac_stark_model([1e-8], 60.0, omega_q0=7.56, **model)

    gamma_int = np.interp(n[0], [0.0, 10.0], [1e-3, 5e-4])
    gamma_tot = 11e-3 + 13.7e-3 + gamma_int
    expected = scripts.photon_number(1e-8 * 1e-6, 8.3, 11e-3, gamma_tot)

    assert n[0] == pytest.approx(expected, rel=1e-9)


def test_attenuation_round_trip():

    P = np.linspace(1e-9, 2e-8, 20)
    _, omega = scripts.ac_stark_model(P, 70.0, omega_q0=7.56, **STARK_MODE)

    attenuation, omega_q0, result = scripts.fit_attenuation(P, omega, **STARK_MODE)

    assert attenuation == pytest.approx(70.0, abs=1e-3)
    assert omega_q0 == pytest.approx(7.56, abs=1e-6)
    assert scripts.gain_from_baseline(-30.0, 10.0, attenuation) == pytest.approx(110.0, abs=1e-3)


def test_non_hermitian_hamiltonian(golden_lattice):

    H = golden_lattice.hamiltonian(8.1)
    lm = scripts.LossModel(**param.LOSS)
    Heff = scripts.build_non_hermitian(H, lm)

    np.testing.assert_allclose(Heff.real, H)
    np.testing.assert_allclose(-2 * Heff.imag, lm.loss_matrix(44))
    assert scripts.build_non_hermitian(H[:44, :44], lm, qubit=False).shape == (44, 44)


@pytest.mark.slow
def test_lower_band_rates_spread_more(golden_tb):

    lm = scripts.LossModel(**param.LOSS)
    df = scripts.disorder_ensemble(golden_tb, lm, param.DISORDER_SIGMA, 5000, seed=0)

    omega, vectors = linalg.eigh(scripts.tight_binding_matrix(golden_tb))
    bands = scripts.classify_bands(omega, vectors)

    def spread(rows):
        sub = df.iloc[rows]
        widths = [
            (sub[f"{name}_high"] - sub[f"{name}_low"]) / sub[f"{name}_mean"]
            for name in ("gamma_ext_L", "gamma_ext_R")
        ]
        return float(np.mean(widths))

    assert spread(bands.lower) > spread(bands.upper)
