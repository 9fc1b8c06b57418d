import logging

import numpy as np
import pandas as pd

import component.scripts as scripts

from .outcome import Outcome

__all__ = ["run_chirality_map"]

logger = logging.getLogger(__name__)


def _homogeneous(tb):
    return tb.J_1 == tb.J_2 and not any(tb.J_higher)


def _giant_atom_optimum(lattice, chi, green, omega, s0):
    """predicted bare qubit frequency of a localized mode and its chirality there"""

    try:
        omega_q = scripts.giant_atom_shift(chi, green, omega)
    except scripts.NumericError:
        # localized frequency on a bare mode
        return {"omega_q": np.nan, "Q": np.nan}

    return {"omega_q": omega_q, "Q": scripts.localized_chirality(lattice, omega_q, omega, s0)}


def run_chirality_map(config, out, workers=1):
    """Chirality of every dressed mode across the sweep.

    The localization ladders of a homogeneous chain are exported alongside,
    with the on-site bath resolvent, the node diagnostic and the bare qubit
    frequency the giant atom needs to localize each rung.
    """

    outcome = Outcome()
    lattice = config.lattice()
    s0 = lattice.profile.center_site
    grid = config.sweep.omega_q_grid()

    df = scripts.chirality_map(lattice, grid, s0, workers)
    outcome.files.append(
        scripts.write_csv(df, out / "chirality.csv", {"omega_q": "GHz", "omega": "GHz"})
    )

    best = df.loc[df.Q.abs().groupby(df.m).idxmax()].reset_index(drop=True)
    outcome.files.append(
        scripts.write_csv(best, out / "chirality_extrema.csv", {"omega_q": "GHz", "omega": "GHz"})
    )

    tb = lattice.tb
    if _homogeneous(tb):
        left, right = scripts.localized_frequencies(tb.N, s0, tb.J_1, tb.omega_r)
        basis = scripts.mode_basis(lattice.cavity_hamiltonian(), lattice.coupling, grid[0])
        chi = scripts.effective_cavity(lattice.profile, tb.N)
        rows = []
        for side, ladder in (("left", left), ("right", right)):
            green = scripts.bath_green(basis.Omega, basis.d, ladder, [(s0, s0)])
            for omega, on_site in zip(ladder, green.values[:, 0]):
                check = scripts.node_condition_diagnostic(basis, omega)
                rows.append(
                    {
                        "side": side,
                        "omega": omega,
                        "green": on_site,
                        **_giant_atom_optimum(lattice, chi, green, omega, s0),
                        **check,
                    }
                )
        ladders = pd.DataFrame(rows)
        outcome.files.append(
            scripts.write_csv(ladders, out / "ladders.csv", {"omega": "GHz", "omega_q": "GHz"})
        )
        outcome.add(ladder_left=len(left), ladder_right=len(right), gbar=chi.gbar)

    return outcome.add(
        s0=s0,
        max_chirality=float(best.Q.abs().max()),
        modes=int(df.m.max()),
        points=len(grid),
    )
