"""Static spectra: band structure, dressed modes and atomic participation."""

import logging

import numpy as np
import pandas as pd
from scipy import linalg

import component.scripts as scripts

from .outcome import Outcome

__all__ = ["run_spectrum", "run_participation"]

logger = logging.getLogger(__name__)


def _band_labels(bands):

    labels = np.empty(len(bands.frequencies), dtype=object)
    labels[bands.lower] = "lower"
    labels[bands.midgap] = "midgap"
    labels[bands.upper] = "upper"

    return labels


def band_table(config):
    """bare array modes of the tight-binding model, and of the exact circuit
    when the configuration gives one"""

    tb = config.tight_binding()
    omega, vectors = linalg.eigh(scripts.tight_binding_matrix(tb))
    df = pd.DataFrame({"m": np.arange(1, tb.N + 1), "omega_tb": omega})

    if config.circuit is not None:
        exact, exact_vectors = scripts.exact_cca_modes(
            config.circuit.to_params(), config.circuit.uniform
        )
        df["omega_exact"] = exact
        omega, vectors = exact, exact_vectors

    bands = scripts.classify_bands(omega, vectors)
    df["band"] = _band_labels(bands)

    return df, bands, tb


def run_spectrum(config, out, workers=1):

    outcome = Outcome()
    df, bands, tb = band_table(config)
    outcome.files.append(
        scripts.write_csv(
            df, out / "band_structure.csv", {"omega_tb": "GHz", "omega_exact": "GHz"}
        )
    )

    lattice = config.lattice()
    spectrum = scripts.sweep_and_track(
        lattice.hamiltonian, config.sweep.omega_q_grid(), workers
    )
    frame = spectrum.to_frame()
    units = {c: "GHz" for c in frame.columns if c.startswith("omega_")}
    outcome.files.append(scripts.write_csv(frame, out / "dressed_modes.csv", units))

    if config.scenario.transmission:
        smap = scripts.transmission_map(
            lattice,
            config.loss_model(),
            config.sweep.omega_p_grid(),
            config.sweep.omega_q_grid(),
            workers,
        )
        outcome.files.append(
            scripts.write_csv(
                smap.to_frame(),
                out / "transmission.csv",
                {"omega_q": "GHz", "omega_p": "GHz"},
            )
        )

    modes = [int(m) for m in config.scenario.modes.split(",") if m.strip()]
    if modes:
        profiles = scripts.mode_profiles(
            lattice.hamiltonian(config.qubit.frequency()), modes
        )
        outcome.files.append(scripts.write_csv(profiles, out / "mode_profiles.csv", {}))

    return outcome.add(
        lower_band=len(bands.lower),
        midgap=len(bands.midgap),
        upper_band=len(bands.upper),
        gap=bands.gap,
        dimer_gap=2 * abs(tb.J_2 - tb.J_1),
        lower_width=bands.lower_width,
        upper_width=bands.upper_width,
        tracking_warnings=len(spectrum.warnings),
    )


def run_participation(config, out, workers=1):

    outcome = Outcome()
    lattice = config.lattice()
    grid = config.sweep.omega_q_grid()

    spectrum = scripts.sweep_and_track(lattice.hamiltonian, grid, workers)
    direct = scripts.participation_direct(spectrum)
    derivative = scripts.participation_hellmann_feynman(spectrum)

    M = direct.shape[1]
    q, m = np.meshgrid(grid, np.arange(1, M + 1), indexing="ij")
    df = pd.DataFrame(
        {
            "omega_q": q.ravel(),
            "m": m.ravel(),
            "omega": spectrum.omega_tilde.ravel(),
            "u2_direct": direct.ravel(),
            "u2_hellmann_feynman": derivative.ravel(),
        }
    )
    outcome.files.append(
        scripts.write_csv(df, out / "participation.csv", {"omega_q": "GHz", "omega": "GHz"})
    )

    omega_q = config.qubit.frequency()
    basis = scripts.mode_basis(lattice.cavity_hamiltonian(), lattice.coupling, omega_q)
    outcome.files.append(
        scripts.write_csv(
            basis.to_frame(),
            out / "bare_modes.csv",
            {"Omega": "GHz", "G": "GHz", "Delta": "GHz"},
        )
    )

    interaction = scripts.max_interaction_spacing(spectrum)
    interaction["jaynes_cummings"] = scripts.jaynes_cummings_frequency(
        basis.G[: len(interaction)]
    )
    outcome.files.append(
        scripts.write_csv(
            interaction,
            out / "interaction.csv",
            {"omega_q": "GHz", "spacing": "GHz", "jaynes_cummings": "GHz"},
        )
    )

    effective = scripts.schrieffer_wolff(basis)
    outcome.files.append(
        scripts.write_csv(effective.to_frame(), out / "effective_couplings.csv", {"G": "GHz"})
    )

    spacings = pd.DataFrame(
        {
            "n": np.arange(2, len(basis.Omega) + 1),
            "effective": scripts.effective_spacings(effective),
            "exact": scripts.photonic_spacings(lattice.hamiltonian(omega_q)),
        }
    )
    spacings["deviation"] = spacings.effective - spacings.exact
    outcome.files.append(
        scripts.write_csv(
            spacings,
            out / "spacings.csv",
            {"effective": "GHz", "exact": "GHz", "deviation": "GHz"},
        )
    )

    interior = np.abs(derivative - direct)[1:-1]

    return outcome.add(
        omega_q=omega_q,
        hellmann_feynman_error=float(interior.max()) if interior.size else float("nan"),
        sum_rule=float(np.abs(direct.sum(axis=1) - 1).max()),
        dispersive_ratio=effective.ratio,
        spacing_deviation=float(spacings.deviation.abs().max()),
        tracking_warnings=len(spectrum.warnings),
    )
