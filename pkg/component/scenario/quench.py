import logging

import numpy as np

import component.scripts as scripts

from .outcome import Outcome

__all__ = ["run_superstrong_dynamics"]

logger = logging.getLogger(__name__)


def run_superstrong_dynamics(config, out, workers=1):
    """Quench map of the qubit population, its column FFT and the dressed
    transitions to compare the peaks with"""

    outcome = Outcome()
    lattice = config.lattice()
    dyn = config.dynamics
    targets, taus = dyn.targets(), dyn.taus()

    qmap = scripts.quench_scan(
        lattice.hamiltonian,
        config.loss_model(),
        dyn.omega_init,
        targets,
        taus,
        ramp_time=dyn.ramp(),
        workers=workers,
        rtol=dyn.rtol,
        atol=dyn.atol,
    )
    outcome.files.append(
        scripts.write_csv(qmap.to_frame(), out / "quench.csv", {"omega_q": "GHz", "tau": "ns"})
    )

    spectra = scripts.fft_map(qmap.population, taus, columns=targets)
    outcome.files.append(
        scripts.write_csv(
            spectra.to_frame(), out / "fft.csv", {"omega_q": "GHz", "frequency": "GHz"}
        )
    )

    spectrum = scripts.sweep_and_track(lattice.hamiltonian, targets, workers)
    overlay = scripts.transition_overlay(spectrum)
    outcome.files.append(
        scripts.write_csv(
            overlay, out / "transitions.csv", {"omega_q": "GHz", "transition": "GHz"}
        )
    )

    peaks = spectra.peaks()

    return outcome.add(
        omega_init=dyn.omega_init,
        ramp_time=dyn.ramp(),
        targets=len(targets),
        taus=len(taus),
        frequency_resolution=float(spectra.frequencies[1]),
        peak_min=float(np.min(peaks)),
        peak_max=float(np.max(peaks)),
    )
