import logging

import numpy as np

import component.scripts as scripts
from component.message import cm

from .outcome import Outcome

__all__ = ["run_emission"]

logger = logging.getLogger(__name__)


def _emission_point(config, lattice, lm, workers, outcome, out):

    em = config.emission
    if em.omega_emit is not None:
        return em.omega_emit

    omega, scan = scripts.optimal_emission_point(
        lattice.hamiltonian,
        lm,
        em.mode,
        (em.window_start, em.window_stop),
        em.window_points,
        workers,
    )
    outcome.files.append(
        scripts.write_csv(scan, out / "emission_scan.csv", {"omega_q": "GHz", "chi_db": "dB"})
    )
    logger.info(cm.log.emission_point.format(em.mode, omega))

    return omega


def _calibration(config, builder, lm, omega_park, workers, outcome, out):
    """SWAP scan around the first-order estimate"""

    em = config.emission
    if em.calibration_points < 1:
        return

    frequency, amplitude = scripts.swap_estimate(
        builder, omega_park, em.mode, em.swap_duration, em.envelope
    )
    n = em.calibration_points
    frequencies = frequency + np.linspace(-em.calibration_span, em.calibration_span, n)
    amplitudes = amplitude * np.linspace(0.5, 1.5, n)

    df = scripts.swap_calibration(
        builder,
        lm,
        omega_park,
        em.mode,
        frequencies,
        amplitudes,
        em.swap_duration,
        workers,
        envelope=em.envelope,
        **config.dynamics.solver(),
    )
    outcome.files.append(
        scripts.write_csv(
            df, out / "swap_calibration.csv", {"frequency": "GHz", "amplitude": "GHz"}
        )
    )

    best = df.loc[df.transfer.idxmax()]
    outcome.add(
        calibrated_frequency=float(best.frequency),
        calibrated_amplitude=float(best.amplitude),
        calibrated_transfer=float(best.transfer),
    )


def run_emission(config, out, workers=1):
    """Directional single-photon emission from a dressed mode"""

    outcome = Outcome()
    em = config.emission
    lattice = config.lattice()
    lm = config.loss_model()
    builder = lattice.hamiltonian

    omega_emit = _emission_point(config, lattice, lm, workers, outcome, out)
    omega_park = omega_emit if em.ideal else em.omega_init
    _calibration(config, builder, lm, omega_park, workers, outcome, out)

    solver = config.dynamics.solver()
    common = dict(
        swap_frequency=em.swap_frequency,
        swap_amplitude=em.swap_amplitude,
        swap_duration=em.swap_duration,
        hold=em.hold,
        envelope=em.envelope,
        **solver,
    )

    if em.ideal:
        result = scripts.ideal_emission(builder, lm, em.mode, omega_emit, **common)
    else:
        result = scripts.emission_protocol(
            builder,
            lm,
            em.mode,
            em.omega_init,
            omega_emit,
            ramp_duration=em.ramp_duration,
            prep_delay=em.prep_delay,
            **common,
        )

    trajectory = result.trajectory
    outcome.files.append(
        scripts.write_csv(
            trajectory.to_frame(), out / "emission.csv", {"t": "ns", "I_L": "1/ns", "I_R": "1/ns"}
        )
    )

    for port, record in (("L", trajectory.a_out_L), ("R", trajectory.a_out_R)):
        # e^{-2 pi i w t} fields: the conjugate puts the tone at w - frame
        sgram = scripts.spectrogram(np.conj(record), dt=solver["report_step"])
        sgram.frequencies = sgram.frequencies + trajectory.frame
        outcome.files.append(
            scripts.write_csv(
                sgram.to_frame(),
                out / f"spectrogram_{port}.csv",
                {"t": "ns", "frequency": "GHz"},
            )
        )

    outcome.add(
        mode=em.mode,
        omega_emit=omega_emit,
        swap_frequency=result.swap_frequency,
        swap_amplitude=result.swap_amplitude,
        transfer=result.transfer,
        schedule=result.schedule.describe(),
        N_L=result.N_L,
        N_R=result.N_R,
        eta=result.eta,
        continuity=float(np.abs(trajectory.continuity).max()),
    )

    if em.gamma_meas_L is not None and em.gamma_meas_R is not None:
        rates = scripts.extract_mode_rates(builder(omega_emit), lm)
        index = em.mode - 1
        gamma_sim = (rates.gamma_ext_L[index], rates.gamma_ext_R[index])
        rescaled = scripts.rescale_emission(
            trajectory, gamma_sim, (em.gamma_meas_L, em.gamma_meas_R)
        )
        outcome.files.append(
            scripts.write_csv(rescaled, out / "emission_rescaled.csv", {"t": "ns"})
        )
        outcome.add(eta_rescaled=rescaled.attrs["eta"])

    return outcome
