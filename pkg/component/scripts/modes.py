"""Bare-mode picture of the giant atom: couplings G_n, superstrong metrics and
atomic participation ratios."""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg

from component.message import cm

from .errors import ConfigError
from .lattice import fix_phase

__all__ = [
    "ModeBasis",
    "mode_basis",
    "mode_couplings",
    "superstrong_metrics",
    "participation_direct",
    "participation_hellmann_feynman",
    "dressed_transitions",
    "max_interaction_spacing",
    "jaynes_cummings_frequency",
]

logger = logging.getLogger(__name__)


@dataclass
class ModeBasis:
    """Bare array modes and their coupling to the qubit.

    d[s, n] is the amplitude of mode n on site s (0-based rows), Omega is
    ascending, Delta_n = Omega_n - omega_q.
    """

    Omega: np.ndarray
    d: np.ndarray
    G: np.ndarray
    omega_q: float

    @property
    def Delta(self):
        return self.Omega - self.omega_q

    @property
    def spacings(self):
        """Omega_n - Omega_{n-1} for n = 2..N"""
        return np.diff(self.Omega)

    def to_frame(self):

        avg_coupling, avg_splitting = superstrong_metrics(self.G, self.Omega)
        n = np.arange(1, len(self.Omega) + 1)

        return pd.DataFrame(
            {
                "n": n,
                "Omega": self.Omega,
                "G": self.G,
                "Delta": self.Delta,
                "coupling_per_splitting": np.r_[np.nan, avg_coupling],
                "splitting_per_coupling": avg_splitting,
            }
        )


def mode_couplings(g, d):
    """G_n = sum_s d_{s,n} g_s.

    Args:
        g (np.ndarray): coupling vector over the sites (GHz)
        d (np.ndarray): orthonormal mode amplitudes, one mode per column
    """

    return np.asarray(d).T @ np.asarray(g)


def mode_basis(cavity_hamiltonian, g, omega_q):
    """Diagonalize the bare array and project the coupling profile on its modes

    Args:
        cavity_hamiltonian (np.ndarray): N x N array block (GHz)
        g (np.ndarray): coupling vector (GHz)
        omega_q (float): bare qubit frequency (GHz)
    """

    Omega, d = linalg.eigh(cavity_hamiltonian)
    d = fix_phase(d)

    return ModeBasis(Omega=Omega, d=d, G=mode_couplings(g, d), omega_q=float(omega_q))


def superstrong_metrics(G, Omega):
    """Average coupling per splitting and average splitting per coupling.

    metric (i) has one entry per spacing n = 2..N:
        (|G_n| + |G_{n-1}|) / 2 / (Omega_n - Omega_{n-1})
    metric (ii) has one entry per mode n = 1..N:
        |G_n| / mean(spacing below, spacing above)
    The first and last modes only have one neighbouring spacing, which is
    used alone. A zero spacing gives an infinite metric.

    Returns:
        (np.ndarray, np.ndarray): metric (i), metric (ii)
    """

    G = np.abs(np.asarray(G, dtype=float))
    Omega = np.asarray(Omega, dtype=float)

    if np.any(np.diff(Omega) < 0):
        raise ConfigError(cm.error.modes.ascending)

    spacing = np.diff(Omega)

    with np.errstate(divide="ignore", invalid="ignore"):

        coupling_per_splitting = (G[1:] + G[:-1]) / 2 / spacing

        around = np.empty_like(G)
        around[1:-1] = (spacing[:-1] + spacing[1:]) / 2
        around[0] = spacing[0]
        around[-1] = spacing[-1]
        splitting_per_coupling = G / around

    coupling_per_splitting[spacing == 0] = np.inf
    splitting_per_coupling[around == 0] = np.inf

    return coupling_per_splitting, splitting_per_coupling


def participation_direct(spectrum):
    """|u_m|^2 of every tracked branch, shape (grid, N+1)"""

    return spectrum.atomic_weight


def participation_hellmann_feynman(spectrum):
    """d omega_m / d omega_q along the tracked branches.

    Central differences inside the grid, one-sided at both ends. Tracking
    warnings recorded in the spectrum are logged again since they make the
    derivative unreliable around the flagged points.
    """

    if len(spectrum.omega_q_grid) < 2:
        raise ConfigError(cm.error.modes.short_grid)

    for warning in spectrum.warnings:
        logger.warning(warning)

    return np.gradient(spectrum.omega_tilde, spectrum.omega_q_grid, axis=0)


def dressed_transitions(omega_tilde, order=1):
    """Differences omega_{m+order} - omega_m of an ascending dressed spectrum.

    Accepts a single spectrum or one spectrum per row.
    """

    omega = np.sort(np.asarray(omega_tilde, dtype=float), axis=-1)

    if order < 1 or order >= omega.shape[-1]:
        raise ConfigError(cm.error.modes.order.format(order))

    return omega[..., order:] - omega[..., :-order]


def max_interaction_spacing(spectrum):
    """Spacing of every adjacent dressed pair where they share the qubit most.

    For each pair (m, m+1) in ascending order, the grid point maximizing
    |u_m|^2 |u_{m+1}|^2 is located and the spacing omega_{m+1} - omega_m is
    read there.

    Returns:
        (pd.DataFrame): m, omega_q at the maximum, spacing, product of weights
    """

    omega, weight = spectrum.ordered()
    product = weight[:, :-1] * weight[:, 1:]
    best = np.argmax(product, axis=0)
    pairs = np.arange(product.shape[1])

    return pd.DataFrame(
        {
            "m": pairs + 1,
            "omega_q": spectrum.omega_q_grid[best],
            "spacing": omega[best, pairs + 1] - omega[best, pairs],
            "weight": product[best, pairs],
        }
    )


def jaynes_cummings_frequency(G, Delta=0.0):
    """Single-mode vacuum Rabi frequency sqrt(4 G^2 + Delta^2), GHz"""

    return np.sqrt(4 * np.asarray(G) ** 2 + np.asarray(Delta) ** 2)
