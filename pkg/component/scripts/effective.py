"""Qubit-mediated photon-photon interaction at second order in G/Delta.

With Delta_n = Omega_n - omega_q the decoupled photonic block reads

    Omega_n^eff = Omega_n + G_n^2 / Delta_n
    G_{n,n'}    = G_n G_n' (Delta_n + Delta_n') / (2 Delta_n Delta_n')

and the qubit moves to omega_q - sum_n G_n^2 / Delta_n, which is what the
exact diagonalization gives: a qubit above the band pushes every mode down.
Only the single-excitation sector is described, nonlinear terms do not appear.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg
from sepal_ui.scripts.warning import SepalWarning

import component.parameter as param
from component.message import cm

from .errors import NumericError

__all__ = [
    "EffectiveModel",
    "schrieffer_wolff",
    "effective_hamiltonian",
    "effective_spectrum",
    "effective_spacings",
    "photonic_spacings",
]

logger = logging.getLogger(__name__)


@dataclass
class EffectiveModel:

    Omega_eff: np.ndarray
    "np.ndarray: dispersively shifted mode frequencies (GHz)"

    omega_q_eff: float
    "float: shifted qubit frequency (GHz)"

    G_matrix: np.ndarray
    "np.ndarray: symmetric mode-mode couplings, zero diagonal (GHz)"

    ratio: float
    "float: max |G_n / Delta_n|, the expansion parameter"

    valid: bool
    "bool: ratio below the validity guard"

    def to_frame(self):
        """long table (n, n', G_nn') of the coupling matrix"""

        N = len(self.Omega_eff)
        n, k = np.meshgrid(np.arange(1, N + 1), np.arange(1, N + 1), indexing="ij")

        return pd.DataFrame(
            {"n": n.ravel(), "n_prime": k.ravel(), "G": self.G_matrix.ravel()}
        )


def schrieffer_wolff(basis, omega_q=None, guard=None):
    """Second-order effective photonic model.

    Args:
        basis (ModeBasis): bare modes and couplings
        omega_q (float, optional): qubit frequency, defaults to the basis one
        guard (float, optional): |G/Delta| above which a warning is raised

    Returns:
        (EffectiveModel)
    """

    guard = param.SW_GUARD if guard is None else guard
    omega_q = basis.omega_q if omega_q is None else float(omega_q)

    Omega = np.asarray(basis.Omega, dtype=float)
    G = np.asarray(basis.G, dtype=float)
    Delta = Omega - omega_q

    resonant = np.flatnonzero(Delta == 0)
    if resonant.size:
        raise NumericError(cm.error.effective.resonant.format(resonant[0] + 1))

    ratio = float(np.max(np.abs(G / Delta)))
    valid = ratio <= guard
    if not valid:
        msg = cm.warning.dispersive.format(ratio, guard)
        logger.warning(msg)
        warnings.warn(msg, SepalWarning)

    shift = G**2 / Delta
    G_matrix = (
        np.outer(G, G)
        * (Delta[:, None] + Delta[None, :])
        / (2 * Delta[:, None] * Delta[None, :])
    )
    np.fill_diagonal(G_matrix, 0.0)

    return EffectiveModel(
        Omega_eff=Omega + shift,
        omega_q_eff=omega_q - shift.sum(),
        G_matrix=(G_matrix + G_matrix.T) / 2,
        ratio=ratio,
        valid=valid,
    )


def effective_hamiltonian(model):
    """N x N photonic block of the effective model (mode basis)"""

    return np.diag(model.Omega_eff) + model.G_matrix


def effective_spectrum(model):
    """ascending eigenfrequencies of the effective photonic block"""

    return linalg.eigvalsh(effective_hamiltonian(model))


def effective_spacings(model):
    """nearest-neighbour spacings of the effective dressed modes"""

    return np.diff(effective_spectrum(model))


def photonic_spacings(H):
    """nearest-neighbour spacings of the exact dressed modes of H, the most
    qubit-like state left out"""

    values, vectors = linalg.eigh(H)
    qubit = int(np.argmax(np.abs(vectors[-1])))

    return np.diff(np.delete(values, qubit))
