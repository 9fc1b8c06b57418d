"""Single-excitation Hamiltonian of the array plus the flux-tunable transmon.

The basis is ordered as the N cavity sites (1-based site s sits at index
s - 1) followed by the qubit. The transmon anharmonicity is carried by
QubitParams but plays no role in this sector: it only enters the
flux-to-frequency map.
"""

import logging
import numbers
import warnings
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import linalg, optimize
from sepal_ui.scripts.warning import SepalWarning

import component.parameter as param
from component.message import cm

from .circuit import tight_binding_matrix
from .errors import ConfigError, NumericError
from .parallel import parallel_map

__all__ = [
    "QubitParams",
    "CouplingProfile",
    "DisorderRealization",
    "LatticeModel",
    "DressedSpectrum",
    "qubit_frequency",
    "flux_for_frequency",
    "draw_disorder",
    "build_hamiltonian",
    "fix_phase",
    "sweep_and_track",
    "mode_profiles",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QubitParams:
    """Symmetric SQUID transmon, energies in GHz and flux in units of the quantum"""

    E_J0: float
    E_C: float
    flux: float = 0.0

    def __post_init__(self):

        if self.E_J0 <= 0 or self.E_C <= 0:
            raise ConfigError(cm.error.lattice.qubit_energies)

        ratio = self.E_J0 / self.E_C
        if ratio < param.TRANSMON_RATIO:
            msg = cm.warning.transmon.format(ratio, param.TRANSMON_RATIO)
            logger.warning(msg)
            warnings.warn(msg, SepalWarning)


def qubit_frequency(q):
    """Transmon frequency omega_q = sqrt(8 E_C E_J(flux)) - E_C in GHz.

    E_J(flux) = E_J0 |cos(pi flux)|, the transmon formula breaks down when
    E_J vanishes at half a flux quantum.
    """

    E_J = q.E_J0 * abs(np.cos(np.pi * q.flux))

    if E_J <= 1e-12 * q.E_J0:
        raise NumericError(cm.error.lattice.zero_josephson.format(q.flux))

    return float(np.sqrt(8 * q.E_C * E_J) - q.E_C)


def flux_for_frequency(omega_q, E_J0, E_C):
    """Reduced flux in [0, 0.5) giving the requested qubit frequency"""

    ratio = (omega_q + E_C) ** 2 / (8 * E_C * E_J0)

    if not 0 < ratio <= 1:
        raise ConfigError(cm.error.lattice.unreachable.format(omega_q))

    return float(np.arccos(ratio) / np.pi)


@dataclass(frozen=True)
class CouplingProfile:
    """Qubit-cavity coupling rates g_s (GHz) keyed by 1-based site"""

    g: dict

    def __post_init__(self):

        if not self.g:
            raise ConfigError(cm.error.lattice.empty_profile)

        g = {int(s): float(v) for s, v in sorted(self.g.items())}

        if not all(np.isfinite(list(g.values()))):
            raise ConfigError(cm.error.lattice.infinite_profile)

        if not any(g.values()):
            raise ConfigError(cm.error.lattice.empty_profile)

        if min(g) < 1:
            raise ConfigError(cm.error.lattice.window.format(min(g), "N"))

        object.__setattr__(self, "g", g)

    @classmethod
    def single_site(cls, site, g):
        return cls({site: g})

    @classmethod
    def gaussian(cls, center, n_sites, width, peak):
        """Truncated gaussian profile on n_sites around center, scaled so that
        the coupling at the center site equals peak"""

        sites = np.arange(n_sites) - (n_sites - 1) / 2
        values = peak * np.exp(-(sites**2) / (2 * width**2))

        return cls({int(center + s): float(v) for s, v in zip(sites, values)})

    @property
    def sites(self):
        return np.array(list(self.g))

    @property
    def rates(self):
        return np.array(list(self.g.values()))

    @property
    def gbar(self):
        """collective coupling sqrt(sum g_s^2)"""
        return float(np.sqrt(np.sum(self.rates**2)))

    @property
    def center_site(self):
        """|g|-weighted center of mass, rounded to the nearest site"""

        weights = np.abs(self.rates)
        return int(np.rint(np.sum(self.sites * weights) / weights.sum()))

    def vector(self, N):
        """coupling vector over the N sites"""

        if self.sites.max() > N:
            raise ConfigError(cm.error.lattice.window.format(self.sites.max(), N))

        g = np.zeros(N)
        g[self.sites - 1] = self.rates

        return g


@dataclass(frozen=True)
class DisorderRealization:
    """Gaussian site-frequency offsets (GHz) and the seed they come from"""

    delta_omega: np.ndarray
    seed: object = None


def draw_disorder(N, sigma, seed):
    """Draw i.i.d. gaussian offsets of standard deviation sigma (GHz).

    Args:
        N (int): number of sites
        sigma (float): standard deviation in GHz
        seed (int | np.random.SeedSequence): reproducible source
    """

    if sigma < 0:
        raise ConfigError(cm.error.lattice.negative_sigma.format(sigma))

    rng = np.random.default_rng(seed)

    return DisorderRealization(delta_omega=rng.normal(0.0, sigma, N), seed=seed)


def build_hamiltonian(tb, q, cp, d=None):
    """Real symmetric (N+1) x (N+1) single-excitation Hamiltonian in GHz.

    Args:
        tb (TightBindingParams): array hoppings
        q (QubitParams | float): transmon, or directly its frequency in GHz
        cp (CouplingProfile): coupling rates
        d (DisorderRealization, optional): site offsets

    Returns:
        (np.ndarray): the cavity block, the qubit frequency on the last
            diagonal entry and g_s on the last row and column
    """

    N = tb.N
    omega_q = float(q) if isinstance(q, numbers.Real) else qubit_frequency(q)

    delta = None
    if d is not None:
        delta = np.asarray(d.delta_omega, dtype=float)
        if delta.shape != (N,):
            raise ConfigError(cm.error.lattice.disorder_size.format(len(delta), N))

    g = cp.vector(N)

    H = np.zeros((N + 1, N + 1))
    H[:N, :N] = tight_binding_matrix(tb, delta)
    H[N, N] = omega_q
    H[N, :N] = g
    H[:N, N] = g

    return H


@dataclass
class LatticeModel:
    """Array, giant-atom coupling and disorder: everything but the qubit frequency"""

    tb: object
    profile: CouplingProfile
    disorder: DisorderRealization = None

    def __post_init__(self):
        # validates the coupling window against the chain length
        self.profile.vector(self.tb.N)

    @property
    def N(self):
        return self.tb.N

    @property
    def coupling(self):
        return self.profile.vector(self.N)

    def cavity_hamiltonian(self):
        """bare N x N array block"""

        delta = None if self.disorder is None else self.disorder.delta_omega
        return tight_binding_matrix(self.tb, delta)

    def hamiltonian(self, omega_q):
        return build_hamiltonian(self.tb, omega_q, self.profile, self.disorder)

    def with_disorder(self, disorder):
        return LatticeModel(self.tb, self.profile, disorder)


def fix_phase(vectors):
    """Make the largest-magnitude component of every column real positive"""

    index = np.argmax(np.abs(vectors), axis=0)
    pivot = vectors[index, np.arange(vectors.shape[1])]
    phase = pivot / np.abs(pivot)

    return vectors / phase


@dataclass
class DressedSpectrum:
    """Tracked eigenpairs over a qubit-frequency sweep.

    omega_tilde[k, m] is the frequency of branch m at grid point k and
    vectors[k, :, m] the matching eigenvector (sites then qubit).
    """

    omega_q_grid: np.ndarray
    omega_tilde: np.ndarray
    vectors: np.ndarray
    warnings: list = field(default_factory=list)

    @property
    def atomic_weight(self):
        """|u_m|^2 per grid point, shape (grid, N+1)"""
        return np.abs(self.vectors[:, -1, :]) ** 2

    @property
    def photonic_weights(self):
        """|c_{s,m}|^2 per grid point, shape (grid, N, N+1)"""
        return np.abs(self.vectors[:, :-1, :]) ** 2

    def ordered(self):
        """frequencies and atomic weights re-sorted by frequency at each point"""

        order = np.argsort(self.omega_tilde, axis=1)
        omega = np.take_along_axis(self.omega_tilde, order, axis=1)
        weight = np.take_along_axis(self.atomic_weight, order, axis=1)

        return omega, weight

    def to_frame(self):
        """one row per grid point: omega_q, the branches and their |u_m|^2"""

        M = self.omega_tilde.shape[1]
        df = pd.DataFrame({"omega_q": self.omega_q_grid})
        frequencies = pd.DataFrame(
            self.omega_tilde, columns=[f"omega_{m}" for m in range(1, M + 1)]
        )
        weights = pd.DataFrame(
            self.atomic_weight, columns=[f"u2_{m}" for m in range(1, M + 1)]
        )

        return pd.concat([df, frequencies, weights], axis=1)


def sweep_and_track(builder, omega_q_grid, workers=1):
    """Diagonalize along the sweep and follow every branch by eigenvector overlap.

    Consecutive grid points are matched with a Hungarian assignment on
    |<v_i(k)|v_j(k+1)>|, the frequency distance breaking ties, so that a
    branch keeps its label through avoided crossings. Labels m = 1..N+1 are
    the ascending order at the first grid point.

    Args:
        builder (callable): omega_q -> Hermitian matrix
        omega_q_grid (array-like): strictly monotone sweep (GHz)
        workers (int): diagonalizations run in parallel

    Returns:
        (DressedSpectrum)
    """

    grid = np.asarray(omega_q_grid, dtype=float)
    steps = np.diff(grid)
    if len(grid) < 1 or not (np.all(steps > 0) or np.all(steps < 0)):
        raise ConfigError(cm.error.lattice.monotone)

    def diagonalize(omega_q):
        return linalg.eigh(builder(omega_q))

    results = parallel_map(diagonalize, grid, workers, desc=cm.progress.sweep)

    values, vectors = results[0]
    vectors = fix_phase(vectors)
    omega = [values]
    states = [vectors]
    ambiguous = []

    for k in range(1, len(grid)):
        values, vectors = results[k]
        previous = states[-1]

        overlap = np.abs(previous.T @ vectors)
        distance = np.abs(omega[-1][:, None] - values[None, :])
        rows, cols = optimize.linear_sum_assignment(
            -overlap + param.TRACKING_PROXIMITY * distance
        )

        best = np.sort(overlap, axis=1)[:, -2:] if overlap.shape[1] > 1 else None
        if best is not None:
            for m in np.flatnonzero(best[:, 1] - best[:, 0] < param.TRACKING_TOLERANCE):
                ambiguous.append(
                    cm.warning.ambiguous.format(m + 1, grid[k], best[m, 1])
                )

        values = values[cols]
        vectors = vectors[:, cols]

        # continuous sign along each branch
        signs = np.sign(np.sum(previous * vectors, axis=0))
        signs[signs == 0] = 1
        vectors = vectors * signs

        omega.append(values)
        states.append(vectors)

    if ambiguous:
        msg = cm.warning.tracking.format(len(ambiguous))
        logger.warning(msg)
        warnings.warn(msg, SepalWarning)

    return DressedSpectrum(
        omega_q_grid=grid,
        omega_tilde=np.array(omega),
        vectors=np.array(states),
        warnings=ambiguous,
    )


def mode_profiles(H, modes):
    """Site populations of selected dressed modes.

    Args:
        H (np.ndarray): single-excitation Hamiltonian
        modes (list): 1-based dressed mode indices in ascending frequency

    Returns:
        (pd.DataFrame): one row per site (qubit last), one column per mode
    """

    values, vectors = linalg.eigh(H)
    N = H.shape[0] - 1

    if any(not 1 <= m <= N + 1 for m in modes):
        raise ConfigError(cm.error.lattice.mode_index.format(modes, N + 1))

    data = {"site": [str(s) for s in range(1, N + 1)] + ["qubit"]}
    for m in modes:
        data[f"psi_{m}"] = np.abs(vectors[:, m - 1]) ** 2

    return pd.DataFrame(data)
