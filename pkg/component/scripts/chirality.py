"""Qubit-induced chirality from the bath Green's function.

Sites are 1-based. A qubit attached at site s0 of a homogeneous chain leaves
s0 - 1 sites on its left and N - s0 on its right; tuned to an eigenfrequency
of one of these segments, it produces a dressed mode with a node at s0 that
lives on one side only.
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg

import component.parameter as param
from component.message import cm

from .errors import ConfigError, NumericError
from .parallel import parallel_map

__all__ = [
    "BathGreen",
    "EffectiveCavityState",
    "bath_green",
    "effective_cavity",
    "localized_frequencies",
    "chirality_quantifier",
    "giant_atom_shift",
    "node_condition_diagnostic",
    "chirality_map",
    "localized_chirality",
]

logger = logging.getLogger(__name__)


@dataclass
class BathGreen:
    """Resolvent of the bare array, G_B(z) = sum_n |phi_n><phi_n| / (z - Omega_n).

    values[k, p] holds <a|G_B(z_k)|b> for the p-th requested pair (a, b).
    """

    z: np.ndarray
    pairs: list
    values: np.ndarray
    Omega: np.ndarray
    d: np.ndarray

    def evaluate(self, z, bra, ket):
        """<bra|G_B(z)|ket> for site-basis vectors"""

        if np.min(np.abs(z - self.Omega)) < param.POLE_DISTANCE:
            raise NumericError(cm.error.chirality.pole.format(z))

        return np.sum((self.d.T @ bra) * (self.d.T @ ket) / (z - self.Omega))


def bath_green(Omega, d, z, pairs):
    """Tabulate site matrix elements of the bare-array Green's function.

    Args:
        Omega (np.ndarray): bare mode frequencies (GHz)
        d (np.ndarray): mode amplitudes, one mode per column
        z (array-like): evaluation points (GHz), real or complex
        pairs (list): 1-based site pairs (a, b)
    """

    z = np.atleast_1d(np.asarray(z))
    N = d.shape[0]

    for a, b in pairs:
        if not (1 <= a <= N and 1 <= b <= N):
            raise ConfigError(cm.error.lattice.window.format(max(a, b), N))

    weights = np.array([d[a - 1] * d[b - 1] for a, b in pairs])
    with np.errstate(divide="ignore", invalid="ignore"):
        values = (1 / (z[:, None] - Omega[None, :])) @ weights.T

    return BathGreen(z=z, pairs=list(pairs), values=values, Omega=Omega, d=d)


@dataclass
class EffectiveCavityState:
    """Normalized coupling vector chi = sum_s g_s |s> / gbar"""

    chi: np.ndarray
    gbar: float


def effective_cavity(profile, N):
    """collective cavity seen by a giant atom"""

    g = profile.vector(N)
    gbar = float(np.linalg.norm(g))

    return EffectiveCavityState(chi=g / gbar, gbar=gbar)


def localized_frequencies(N, s0, J, omega0):
    """Frequencies at which a qubit at site s0 localizes a dressed mode.

    left ladder:  omega0 + 2J cos(m pi / s0),           m = 1..s0-1
    right ladder: omega0 + 2J cos(p pi / (N - s0 + 1)), p = 1..N-s0

    Args:
        N (int): number of sites of the homogeneous chain
        s0 (int): 1-based coupling site
        J (float): hopping (GHz)
        omega0 (float): cavity frequency (GHz)
    """

    if not 1 <= s0 <= N:
        raise ConfigError(cm.error.lattice.window.format(s0, N))

    m = np.arange(1, s0)
    p = np.arange(1, N - s0 + 1)

    left = omega0 + 2 * J * np.cos(m * np.pi / s0)
    right = omega0 + 2 * J * np.cos(p * np.pi / (N - s0 + 1))

    return np.sort(left), np.sort(right)


def chirality_quantifier(eigvec, s0, N=None):
    """Left-minus-right photonic weight about s0, in [-1, 1].

    Sites up to s0 included count as left. When the vector carries the qubit
    amplitude as last entry (length N + 1), it is left out of both sums.

    Args:
        eigvec (np.ndarray): dressed vector over the sites (and qubit)
        s0 (int): 1-based reference site
        N (int, optional): number of sites, len(eigvec) when omitted
    """

    psi = np.asarray(eigvec)
    N = len(psi) if N is None else N
    weights = np.abs(psi[:N]) ** 2
    total = weights.sum()

    if total == 0:
        raise NumericError(cm.error.chirality.no_photon)

    return float((weights[:s0].sum() - weights[s0:].sum()) / total)


def giant_atom_shift(chi, green, omega_BS):
    """Bare qubit frequency maximizing the localization of the mode at omega_BS.

    omega_q = omega_BS - gbar^2 <chi|G_B(omega_BS)|chi>

    Args:
        chi (EffectiveCavityState): collective cavity of the atom
        green (BathGreen): bath resolvent
        omega_BS (float): target dressed frequency (GHz)
    """

    value = green.evaluate(omega_BS, chi.chi, chi.chi)

    return float(omega_BS - chi.gbar**2 * np.real(value))


def node_condition_diagnostic(basis, omega, threshold=None):
    """Check that a predicted localized frequency keeps the atom decoupled.

    m0 is the bare mode closest to the localized frequency omega and
    delta_omega = |omega - Omega_m0| its distance to it. The node picture
    holds when G_m0 / delta_omega is well below the threshold; a localized
    frequency sitting exactly on a bare mode gives an infinite ratio.

    Returns:
        (dict): m0 (1-based), ratio and flag
    """

    threshold = param.NODE_THRESHOLD if threshold is None else threshold

    m0 = int(np.argmin(np.abs(basis.Omega - omega)))
    delta_omega = abs(omega - basis.Omega[m0])
    ratio = float(abs(basis.G[m0]) / delta_omega) if delta_omega else np.inf

    return {"m0": m0 + 1, "ratio": ratio, "ok": ratio < threshold}


def chirality_map(model, omega_q_grid, s0=None, workers=1):
    """Q_m of every dressed mode across a qubit-frequency sweep.

    Args:
        model (LatticeModel): array and coupling
        omega_q_grid (array-like): bare qubit frequencies (GHz)
        s0 (int, optional): reference site, the profile center by default
        workers (int): parallel diagonalizations

    Returns:
        (pd.DataFrame): long table omega_q, m, omega_m, Q_m
    """

    s0 = model.profile.center_site if s0 is None else s0
    N = model.N

    def evaluate(omega_q):
        values, vectors = linalg.eigh(model.hamiltonian(omega_q))
        Q = [chirality_quantifier(vectors[:, m], s0, N) for m in range(N + 1)]
        return values, np.array(Q)

    grid = np.asarray(omega_q_grid, dtype=float)
    results = parallel_map(evaluate, grid, workers, desc=cm.progress.chirality)

    frames = [
        pd.DataFrame(
            {
                "omega_q": omega_q,
                "m": np.arange(1, N + 2),
                "omega": values,
                "Q": Q,
            }
        )
        for omega_q, (values, Q) in zip(grid, results)
    ]

    return pd.concat(frames, ignore_index=True)


def localized_chirality(model, omega_q, omega_BS, s0):
    """Q of the dressed mode closest to omega_BS at the bare qubit frequency omega_q"""

    values, vectors = linalg.eigh(model.hamiltonian(omega_q))
    m = int(np.argmin(np.abs(values - omega_BS)))

    return chirality_quantifier(vectors[:, m], s0, model.N)
