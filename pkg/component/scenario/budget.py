"""Qubit decay budget and photon-number calibration."""

import logging

import numpy as np
import pandas as pd

import component.parameter as param
import component.scripts as scripts

from .outcome import Outcome

__all__ = ["run_purcell", "run_ac_stark"]

logger = logging.getLogger(__name__)


def run_purcell(config, out, workers=1):
    """Drive line, readout and array contributions to the qubit T1"""

    outcome = Outcome()
    lattice = config.lattice()
    lm = config.loss_model()
    grid = config.sweep.omega_q_grid()

    Hcav = lattice.cavity_hamiltonian()
    basis = scripts.mode_basis(Hcav, lattice.coupling, grid[0])
    rates = scripts.extract_mode_rates(Hcav, lm, qubit=False)
    cca = {
        "Omega": basis.Omega,
        "G": basis.G,
        "gamma_int": rates.gamma_int,
        "gamma_ext": rates.gamma_ext_L + rates.gamma_ext_R,
    }

    df = scripts.purcell_budget(grid, param.DRIVE_LINE, param.READOUT, cca)
    units = {c: "GHz" for c in ("omega_q", "drive", "readout", "cca", "total")}
    units.update({c: "us" for c in df.columns if c.startswith("T1_")})
    outcome.files.append(scripts.write_csv(df, out / "purcell.csv", units))

    drive = scripts.drive_line_rate(np.array([5.0, 9.5]), **param.DRIVE_LINE)
    T1 = scripts.t1_limit(drive)

    return outcome.add(
        T1_drive_5GHz=float(T1[0]),
        T1_drive_9p5GHz=float(T1[1]),
        failures=df.attrs["failures"],
    )


def run_ac_stark(config, out, workers=1):
    """Synthetic AC-Stark calibration: shifted qubit frequencies generated
    with a known line attenuation, then fitted back"""

    outcome = Outcome()
    lattice = config.lattice()
    lm = config.loss_model()
    cal = param.STARK_CALIBRATION
    rng = np.random.default_rng(config.sweep.seed)

    omega_init = config.emission.omega_init
    H = lattice.hamiltonian(omega_init)
    rates = scripts.extract_mode_rates(H, lm)
    _, omega_q0 = scripts.dressed_qubit_state(H)
    P_in = np.linspace(cal["power_start"], cal["power_stop"], cal["points"])

    # off-resonant reflection baseline in dBm, used to calibrate the output line
    baseline_in = 10 * np.log10(cal["power_start"] / 1e-3)
    baseline_out = baseline_in - cal["attenuation"] + cal["gain"]

    frames = []
    for mode, chi in param.STARK.items():
        index = mode - 1
        model = {
            "omega_m": rates.frequency[index],
            "gamma_ext_port": rates.gamma_ext_L[index],
            "gamma_ext_other": rates.gamma_ext_R[index],
            "gamma_int": rates.gamma_int[index],
            "chi": chi,
        }
        n, omega_q = scripts.ac_stark_model(
            P_in, cal["attenuation"], omega_q0=omega_q0, **model
        )
        measured = omega_q + cal["noise"] * rng.normal(size=omega_q.size)
        attenuation, fitted_q0, _ = scripts.fit_attenuation(P_in, measured, **model)
        gain = scripts.gain_from_baseline(baseline_in, baseline_out, attenuation)

        frames.append(
            pd.DataFrame(
                {"mode": mode, "P_in": P_in, "n": n, "omega_q": measured}
            )
        )
        outcome.add(
            **{
                f"attenuation_{mode}": attenuation,
                f"omega_q0_{mode}": fitted_q0,
                f"chi_{mode}": chi,
                f"gain_{mode}": float(gain),
            }
        )

    df = pd.concat(frames, ignore_index=True)
    outcome.files.append(
        scripts.write_csv(df, out / "ac_stark.csv", {"P_in": "W", "omega_q": "GHz"})
    )

    return outcome.add(
        attenuation_true=cal["attenuation"], gain_true=cal["gain"], omega_q0=omega_q0
    )
