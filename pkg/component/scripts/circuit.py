"""Circuit quantization of the capacitively coupled LC chain.

The chain of N grounded LC resonators (L_g, C_g) is coupled by staggered
capacitances C_1 (intracell) and C_2 (intercell) plus stray capacitances to
the 2nd, 3rd and 4th neighbours. Frequencies are returned in GHz as ordinary
frequencies.
"""

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from sepal_ui.scripts.warning import SepalWarning

import component.parameter as param
from component.message import cm

from .errors import ConfigError, NumericError

__all__ = [
    "CircuitParams",
    "TightBindingParams",
    "BandStructure",
    "build_capacitance_matrix",
    "exact_cca_frequencies",
    "exact_cca_modes",
    "exact_hopping_matrix",
    "dimer_from_exact",
    "derive_tight_binding",
    "tight_binding_matrix",
    "classify_bands",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CircuitParams:
    """Lumped elements of the array, SI units"""

    L_g: float
    C_g: float
    C_1: float
    C_2: float
    C_p1: float = 0.0
    C_p2: float = 0.0
    C_p3: float = 0.0
    N: int = param.N_CAVITIES

    def __post_init__(self):

        if self.L_g <= 0 or self.C_g <= 0:
            raise ConfigError(cm.error.circuit.ground_elements)

        couplings = {
            "C_1": self.C_1,
            "C_2": self.C_2,
            "C_p1": self.C_p1,
            "C_p2": self.C_p2,
            "C_p3": self.C_p3,
        }
        negative = [k for k, v in couplings.items() if v < 0]
        if negative:
            raise ConfigError(cm.error.circuit.negative.format(", ".join(negative)))

        if self.N < 4:
            raise ConfigError(cm.error.circuit.too_short.format(self.N))

        if self.N % 2:
            raise ConfigError(cm.error.circuit.odd.format(self.N))

    @property
    def strays(self):
        """stray capacitances ordered by neighbour distance 2, 3, 4"""
        return (self.C_p1, self.C_p2, self.C_p3)


@dataclass(frozen=True)
class TightBindingParams:
    """Hopping model of the array, GHz.

    J_higher holds the couplings to the neighbours at distance 2, 3, ... in
    that order, it can be shorter than the chain allows.
    """

    omega_r: float
    J_1: float
    J_2: float
    J_higher: tuple = ()
    N: int = param.N_CAVITIES
    Z_r: float = float("nan")
    C_sigma: float = float("nan")
    beta: tuple = field(default=())

    def __post_init__(self):

        if self.J_1 < 0 or self.J_2 < 0:
            raise ConfigError(cm.error.circuit.negative_hopping)

        if self.N < 2:
            raise ConfigError(cm.error.lattice.too_short.format(self.N))

        object.__setattr__(self, "J_higher", tuple(float(j) for j in self.J_higher))

    def hopping(self, distance):
        """uniform hopping at a distance >= 2, 0 when not specified"""

        index = distance - 2
        return self.J_higher[index] if 0 <= index < len(self.J_higher) else 0.0


def build_capacitance_matrix(p, uniform=False):
    """Capacitance matrix of the chain (F).

    Off-diagonal entries carry the negative coupling capacitances. The
    diagonal is the row sum of the ground capacitance and of every incident
    coupling, so edge sites have a smaller total. With uniform=True every
    site gets the interior value C_g + C_1 + C_2 + 2(C_p1 + C_p2 + C_p3).

    Args:
        p (CircuitParams): lumped elements
        uniform (bool): use the interior total capacitance on every site

    Returns:
        (np.ndarray): real symmetric N x N matrix
    """

    if p.N < 4:
        raise ConfigError(cm.error.circuit.too_short.format(p.N))

    N = p.N
    M = np.zeros((N, N))

    # staggered nearest neighbours, the chain starts with an intracell bond
    bonds = np.where(np.arange(N - 1) % 2 == 0, p.C_1, p.C_2)
    M[np.arange(N - 1), np.arange(1, N)] = -bonds

    for distance, c in enumerate(p.strays, start=2):
        M[np.arange(N - distance), np.arange(distance, N)] = -c

    M = M + M.T

    if uniform:
        diagonal = p.C_g + p.C_1 + p.C_2 + 2 * sum(p.strays)
        np.fill_diagonal(M, diagonal)
    else:
        np.fill_diagonal(M, p.C_g + np.abs(M).sum(axis=1))

    return M


def exact_cca_modes(p, uniform=False):
    """Eigenfrequencies (GHz) and site amplitudes of sqrt(C^-1 L^-1).

    Solved as the symmetric generalized problem (1/L_g) x = w^2 C x so that
    the spectrum is real and positive.

    Returns:
        (np.ndarray, np.ndarray): ascending frequencies and the normalized
            mode vectors as columns
    """

    C = build_capacitance_matrix(p, uniform)
    inverse_L = np.eye(p.N) / p.L_g

    try:
        w2, vectors = linalg.eigh(inverse_L, C)
    except linalg.LinAlgError as e:
        raise NumericError(cm.error.circuit.singular.format(e))

    if np.any(w2 <= 0):
        raise NumericError(cm.error.circuit.singular.format(w2.min()))

    frequencies = np.sqrt(w2) / (2 * np.pi) / 1e9
    vectors = vectors / np.linalg.norm(vectors, axis=0)

    return frequencies, vectors


def exact_cca_frequencies(p, uniform=False):
    """Sorted mode frequencies of the exact chain Hamiltonian (GHz)"""

    return exact_cca_modes(p, uniform)[0]


def exact_hopping_matrix(p, uniform=False):
    """Site representation of sqrt(C^-1 L^-1) / 2pi in GHz"""

    C = build_capacitance_matrix(p, uniform)

    try:
        values, U = linalg.eigh(linalg.inv(C) / p.L_g)
    except linalg.LinAlgError as e:
        raise NumericError(cm.error.circuit.singular.format(e))

    H = (U * np.sqrt(values)) @ U.T / (2 * np.pi) / 1e9

    return (H + H.T) / 2


def dimer_from_exact(p, uniform=False, max_distance=5):
    """Read the tight-binding coefficients off the exact site Hamiltonian.

    Couplings are averaged over the bulk bonds, away from the two edge cells.
    """

    H = exact_hopping_matrix(p, uniform)
    N = p.N
    bulk = slice(2, N - 2)

    def bulk_mean(values):
        return float(values[2:-2].mean() if len(values) > 4 else values.mean())

    upper = np.diag(H, 1)
    higher = tuple(
        bulk_mean(np.diag(H, q)) for q in range(2, min(max_distance, N - 1) + 1)
    )

    return TightBindingParams(
        omega_r=float(np.diag(H)[bulk].mean()),
        J_1=bulk_mean(upper[0::2]),
        J_2=bulk_mean(upper[1::2]),
        J_higher=higher,
        N=N,
    )


def derive_tight_binding(p, uniform=False):
    """Linearized dimer coefficients from the circuit.

    C_sigma = C_g + C_1 + C_2 (uniform=True also adds twice the strays),
    omega_r = 1/(2pi sqrt(L_g C_sigma)), Z_r = sqrt(L_g/C_sigma) and
    J_i = omega_r beta_i / 2 with beta_i = C_i/C_sigma.

    Args:
        p (CircuitParams): lumped elements
        uniform (bool): include the strays in the total capacitance

    Returns:
        (TightBindingParams)
    """

    C_sigma = p.C_g + p.C_1 + p.C_2
    if uniform:
        C_sigma += 2 * sum(p.strays)

    beta = tuple(c / C_sigma for c in (p.C_1, p.C_2) + p.strays)

    if max(beta) > param.BETA_WARNING:
        msg = cm.warning.beta.format(max(beta), param.BETA_WARNING)
        logger.warning(msg)
        warnings.warn(msg, SepalWarning)

    omega_r = 1 / (2 * np.pi * np.sqrt(p.L_g * C_sigma)) / 1e9
    J = [omega_r * b / 2 for b in beta]

    return TightBindingParams(
        omega_r=float(omega_r),
        J_1=float(J[0]),
        J_2=float(J[1]),
        J_higher=tuple(J[2:]),
        N=p.N,
        Z_r=float(np.sqrt(p.L_g / C_sigma)),
        C_sigma=float(C_sigma),
        beta=beta,
    )


def tight_binding_matrix(tb, delta_omega=None):
    """N x N hopping matrix of the array in GHz

    Args:
        tb (TightBindingParams): hopping model
        delta_omega (np.ndarray, optional): per-site frequency offsets
    """

    N = tb.N
    H = np.zeros((N, N))

    bonds = np.where(np.arange(N - 1) % 2 == 0, tb.J_1, tb.J_2)
    H[np.arange(N - 1), np.arange(1, N)] = bonds

    for distance in range(2, N):
        J = tb.hopping(distance)
        if J:
            H[np.arange(N - distance), np.arange(distance, N)] = J

    H = H + H.T
    diagonal = np.full(N, tb.omega_r)
    if delta_omega is not None:
        diagonal = diagonal + np.asarray(delta_omega, dtype=float)
    np.fill_diagonal(H, diagonal)

    return H


@dataclass
class BandStructure:
    """Chain spectrum split into lower band, edge (midgap) modes and upper band"""

    frequencies: np.ndarray
    lower: np.ndarray
    midgap: np.ndarray
    upper: np.ndarray

    @property
    def gap(self):
        """distance between the two passbands (GHz)"""
        return float(
            self.frequencies[self.upper].min() - self.frequencies[self.lower].max()
        )

    @property
    def lower_width(self):
        f = self.frequencies[self.lower]
        return float(f.max() - f.min())

    @property
    def upper_width(self):
        f = self.frequencies[self.upper]
        return float(f.max() - f.min())


def classify_bands(frequencies, vectors, edge_sites=None, threshold=None):
    """Split a chain spectrum into its two passbands and the edge modes.

    The two largest spacings of the spectrum bound the midgap window: the
    modes between them are edge modes when there are at most two and each
    keeps more than `threshold` of its weight on the `edge_sites` first and
    last sites. Otherwise the spectrum is cut at its largest spacing and
    there is no midgap mode.

    Args:
        frequencies (np.ndarray): ascending mode frequencies
        vectors (np.ndarray): mode vectors as columns, site basis
        edge_sites (int): sites counted at each end, at most a quarter of
            the chain by default
        threshold (float): edge weight above which a mode is an edge mode
    """

    frequencies = np.asarray(frequencies, dtype=float)
    n = len(frequencies)
    if n < 2:
        raise ConfigError(cm.error.circuit.bands.format(n))

    if edge_sites is None:
        edge_sites = min(param.EDGE_SITES, max(1, vectors.shape[0] // 4))
    threshold = param.EDGE_WEIGHT if threshold is None else threshold

    weights = np.abs(vectors) ** 2
    edge = weights[:edge_sites].sum(axis=0) + weights[-edge_sites:].sum(axis=0)

    index = np.arange(n)
    spacing = np.diff(frequencies)
    a, b = np.sort(np.argsort(spacing)[-2:]) if n > 2 else (0, 0)
    between = index[a + 1 : b + 1]

    if 0 < len(between) <= 2 and np.all(edge[between] > threshold):
        lower, midgap, upper = index[: a + 1], between, index[b + 1 :]
    else:
        cut = int(np.argmax(spacing)) + 1
        lower, midgap, upper = index[:cut], index[:0], index[cut:]

    bands = BandStructure(
        frequencies=frequencies, lower=lower, midgap=midgap, upper=upper
    )

    logger.debug(
        cm.log.bands.format(len(bands.lower), len(bands.midgap), len(bands.upper))
    )

    return bands
