import json

import numpy as np
import pandas as pd
import pytest

import component.parameter as param
import component.scripts as scripts
from component.model import read_config
from component.scenario import RUNNERS, run_scenario

DEVICE = """
[device]
N = 8
omega_r = 7.5
J_1 = 0.1
J_2 = 0.2
J_higher =

[coupling]
shape = single
center = 4
peak = 0.02

[sweep]
omega_q_start = 7.1
omega_q_stop = 7.9
points = 9
draws = 3
"""


@pytest.fixture
def ini(tmp_path):
    path = tmp_path / "device.ini"
    path.write_text(DEVICE)
    return path


def read_table(path):
    return pd.read_csv(path, comment="#")


def test_every_scenario_has_a_runner():

    assert set(RUNNERS) == set(param.SCENARIOS)


def test_spectrum_bundle(ini, tmp_path):

    out = tmp_path / "spectrum"
    outcome = run_scenario(read_config(ini, ["scenario.modes=1,9"]), out=out)

    names = sorted(p.name for p in out.iterdir())
    assert names == [
        "band_structure.csv",
        "dressed_modes.csv",
        "manifest.json",
        "mode_profiles.csv",
        "summary.txt",
    ]

    bands = read_table(out / "band_structure.csv")
    assert len(bands) == 8
    assert outcome.results["lower_band"] + outcome.results["midgap"] + outcome.results[
        "upper_band"
    ] == 8
    assert outcome.results["dimer_gap"] == pytest.approx(0.2)

    assert len(read_table(out / "dressed_modes.csv")) == 9

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"] == "spectrum"
    assert manifest["parameters"]["device"]["N"] == 8
    assert manifest["results"]["lower_band"] == outcome.results["lower_band"]

    summary = (out / "summary.txt").read_text()
    assert "spectrum" in summary


def test_reruns_are_byte_identical(ini, tmp_path):

    config = read_config(ini)
    first = run_scenario(config, "spectrum", tmp_path / "a")
    second = run_scenario(config, "spectrum", tmp_path / "b", workers=3)

    for a, b in zip(first.files, second.files):
        assert a.name == b.name
        assert a.read_bytes() == b.read_bytes()


def test_chirality_map_on_a_homogeneous_chain(ini, tmp_path):

    config = read_config(ini, ["device.J_2=0.1"])
    outcome = run_scenario(config, "chirality-map", tmp_path)

    assert outcome.results["s0"] == 4
    assert outcome.results["ladder_left"] == 3
    assert outcome.results["ladder_right"] == 4
    assert outcome.results["modes"] == 9

    ladders = read_table(tmp_path / "ladders.csv")
    assert len(ladders) == 7

    # a single-site atom localizes each rung at its own frequency
    np.testing.assert_allclose(ladders.omega_q, ladders.omega, atol=1e-9)
    assert (ladders.Q.abs() > 1 - 1e-6).all()
    assert (ladders.side == "left").sum() == 3


def test_fit_roundtrip_needs_a_seed(ini, tmp_path):

    with pytest.raises(scripts.ConfigError):
        run_scenario(read_config(ini), "fit-roundtrip", tmp_path)

    assert not (tmp_path / "manifest.json").exists()


def test_fit_roundtrip_is_reproducible(ini, tmp_path):

    config = read_config(ini, seed=2)

    first = run_scenario(config, "fit-roundtrip", tmp_path / "a")
    second = run_scenario(config, "fit-roundtrip", tmp_path / "b", workers=2)

    df = read_table(tmp_path / "a" / "roundtrip.csv")
    assert len(df) == 3
    assert first.results["draws"] == 3
    assert (tmp_path / "a" / "roundtrip.csv").read_bytes() == (
        tmp_path / "b" / "roundtrip.csv"
    ).read_bytes()
    assert second.results["max_rate_error"] == first.results["max_rate_error"]


def test_unknown_scenario(ini, tmp_path):

    with pytest.raises(scripts.ConfigError):
        run_scenario(read_config(ini), "tomography", tmp_path)


def test_participation_compares_the_effective_spacings(ini, tmp_path):

    outcome = run_scenario(read_config(ini, ["qubit.omega_q=8.6"]), "participation", tmp_path)

    spacings = read_table(tmp_path / "spacings.csv")
    assert len(spacings) == 7
    assert list(spacings.columns) == ["n", "effective", "exact", "deviation"]
    assert outcome.results["spacing_deviation"] == pytest.approx(
        spacings.deviation.abs().max()
    )
    assert outcome.results["sum_rule"] < 1e-10


def test_dissipation_ensemble_reports_perturbative_rates(ini, tmp_path):

    config = read_config(ini, ["sweep.realizations=100"], seed=4)
    outcome = run_scenario(config, "dissipation-ensemble", tmp_path)

    rates = read_table(tmp_path / "rates.csv")
    assert "gamma_tot_perturbative" in rates.columns
    assert outcome.results["perturbative_error"] < 0.05
    assert len(read_table(tmp_path / "ensemble.csv")) == 8


def test_emission_scenario_with_a_calibration_scan(ini, tmp_path):

    overrides = [
        "emission.mode=8",
        "emission.omega_init=7.95",
        "emission.omega_emit=7.9",
        "emission.swap_duration=50",
        "emission.ramp_duration=20",
        "emission.hold=200",
        "emission.calibration_points=3",
    ]
    outcome = run_scenario(read_config(ini, overrides), "emission", tmp_path)

    calibration = read_table(tmp_path / "swap_calibration.csv")
    assert len(calibration) == 9
    assert outcome.results["calibrated_transfer"] == pytest.approx(calibration.transfer.max())

    assert outcome.results["mode"] == 8
    assert 0 < outcome.results["transfer"] <= 0.5 + 1e-9
    assert outcome.results["continuity"] < 1e-4
    assert (tmp_path / "spectrogram_L.csv").exists()


@pytest.mark.slow
def test_ac_stark_recovers_the_line_calibration(tmp_path):

    outcome = run_scenario(read_config(seed=3), "ac-stark", tmp_path)

    results = outcome.results
    for mode in param.STARK:
        assert results[f"attenuation_{mode}"] == pytest.approx(results["attenuation_true"], abs=1.0)
        assert results[f"gain_{mode}"] == pytest.approx(results["gain_true"], abs=1.0)

    assert len(read_table(tmp_path / "ac_stark.csv")) == len(param.STARK) * 20
