"""Dissipation of the dressed modes.

Losses enter as H_NH = H - i K / 2 where K is the real symmetric loss matrix:
kappa_int on every site, kappa_q on the qubit and the two ports attached to
the first (last) site with a weaker tail on the second (second to last) site.
The port blocks carry the dissipative cross term cross_factor * sqrt(kappa
kappa') between those two sites. Mode rates are gamma_m = -2 Im(lambda_m), so
a uniform kappa_int gives gamma = kappa_int. All rates are ordinary
frequencies in GHz.
"""

import logging
import warnings
from dataclasses import asdict, dataclass, replace

import lmfit
import numpy as np
import pandas as pd
from scipy import constants, linalg, optimize
from sepal_ui.scripts.warning import SepalWarning

import component.parameter as param
from component.message import cm

from .circuit import tight_binding_matrix
from .errors import ConfigError, NumericError
from .lattice import draw_disorder
from .parallel import parallel_map

__all__ = [
    "RATE_NAMES",
    "LossModel",
    "ModeRates",
    "ReflectionTraceParams",
    "ReflectionModel",
    "build_non_hermitian",
    "extract_mode_rates",
    "perturbative_rates",
    "reflection_spectrum",
    "fit_reflection",
    "disorder_ensemble",
    "drive_line_rate",
    "t1_limit",
    "purcell_budget",
    "photon_number",
    "ac_stark_model",
    "fit_attenuation",
    "gain_from_baseline",
]

logger = logging.getLogger(__name__)

RATE_NAMES = ["gamma_int", "gamma_ext_L", "gamma_ext_R", "gamma_tot"]


@dataclass(frozen=True)
class LossModel:

    kappa_int: float = 0.0
    "float: internal rate of every cavity (GHz)"

    kappa_q: float = 0.0
    "float: qubit relaxation rate (GHz)"

    kappa_ext_L: float = 0.0
    "float: left port rate on the first site (GHz)"

    kappa_ext_R: float = 0.0
    "float: right port rate on the last site (GHz)"

    kappa_ext_Lp: float = 0.0
    "float: left port rate on the second site (GHz)"

    kappa_ext_Rp: float = 0.0
    "float: right port rate on the second to last site (GHz)"

    cross_factor: float = 2.0
    "float: port cross term in units of sqrt(kappa kappa'), 1 for a single coherent channel"

    def __post_init__(self):

        negative = [k for k, v in asdict(self).items() if v < 0]
        if negative:
            raise ConfigError(cm.error.openloss.negative.format(", ".join(negative)))

    def with_rates(self, **rates):
        return replace(self, **rates)

    def port_block(self, port):
        """2 x 2 loss block of a port, edge site first"""

        if port == "L":
            k, kp = self.kappa_ext_L, self.kappa_ext_Lp
        else:
            k, kp = self.kappa_ext_R, self.kappa_ext_Rp

        cross = self.cross_factor * np.sqrt(k * kp)

        return np.array([[k, cross], [cross, kp]])

    def loss_matrix(self, N, qubit=True, part="all"):
        """Real symmetric loss matrix K.

        Args:
            N (int): number of sites
            qubit (bool): append the qubit as last basis state
            part (str): "all", "internal" (kappa_int and kappa_q), "L" or "R"
        """

        if part not in ("all", "internal", "L", "R"):
            raise ConfigError(cm.error.openloss.part.format(part))

        dim = N + 1 if qubit else N
        K = np.zeros((dim, dim))

        if part in ("all", "internal"):
            K[np.arange(N), np.arange(N)] += self.kappa_int
            if qubit:
                K[N, N] += self.kappa_q

        if part in ("all", "L"):
            K[:2, :2] += self.port_block("L")

        if part in ("all", "R"):
            # edge site first in the block
            edge = np.ix_([N - 1, N - 2], [N - 1, N - 2])
            K[edge] += self.port_block("R")

        return K

    def port_vector(self, N, port, qubit=True):
        """coherent coupling vector of a port, sqrt(kappa) on the edge and
        sqrt(kappa') on its neighbour"""

        v = np.zeros(N + 1 if qubit else N)

        if port == "L":
            v[0], v[1] = np.sqrt(self.kappa_ext_L), np.sqrt(self.kappa_ext_Lp)
        else:
            v[N - 1], v[N - 2] = np.sqrt(self.kappa_ext_R), np.sqrt(self.kappa_ext_Rp)

        return v

    def check_positive(self, N, qubit=True):
        """warn when K is not positive semidefinite (gain in some direction)"""

        smallest = linalg.eigvalsh(self.loss_matrix(N, qubit)).min()
        if smallest < -1e-15:
            msg = cm.warning.indefinite.format(smallest)
            logger.warning(msg)
            warnings.warn(msg, SepalWarning)

        return smallest


def build_non_hermitian(H, lm, qubit=True, part="all"):
    """H - i K / 2 for the loss model.

    Args:
        H (np.ndarray): Hermitian single-excitation Hamiltonian
        lm (LossModel): loss rates
        qubit (bool): H carries the qubit as last basis state
        part (str): restrict the losses, see LossModel.loss_matrix
    """

    N = H.shape[0] - 1 if qubit else H.shape[0]

    return H - 0.5j * lm.loss_matrix(N, qubit, part)


def _match(reference, vectors):
    """column permutation of vectors best overlapping the reference columns"""

    vectors = vectors / np.linalg.norm(vectors, axis=0)
    overlap = np.abs(reference.conj().T @ vectors)
    _, cols = optimize.linear_sum_assignment(-overlap)

    return cols


def _mode_eigenvalues(H, lm, qubit, part, reference):

    values, vectors = linalg.eig(build_non_hermitian(H, lm, qubit, part))

    return values[_match(reference, vectors)]


@dataclass
class ModeRates:
    """Per-mode rates (GHz), modes in ascending Hermitian frequency"""

    frequency: np.ndarray
    gamma_int: np.ndarray
    gamma_ext_L: np.ndarray
    gamma_ext_R: np.ndarray
    gamma_tot: np.ndarray

    @property
    def chi_db(self):
        """10 log10(gamma_R / gamma_L): +inf when only the right port sees the
        mode, nan when neither does"""

        with np.errstate(divide="ignore", invalid="ignore"):
            return 10 * np.log10(self.gamma_ext_R / self.gamma_ext_L)

    @property
    def additivity(self):
        """relative mismatch between gamma_tot and the sum of its parts"""

        parts = self.gamma_int + self.gamma_ext_L + self.gamma_ext_R
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.abs(self.gamma_tot - parts) / self.gamma_tot

    def to_frame(self):

        df = pd.DataFrame(
            {
                "m": np.arange(1, len(self.frequency) + 1),
                "omega": self.frequency,
                **{name: getattr(self, name) for name in RATE_NAMES},
            }
        )
        df["chi_db"] = self.chi_db

        return df


def extract_mode_rates(H, lm, qubit=True):
    """Rates of every mode by selective zeroing of the loss channels.

    Four non-Hermitian diagonalizations: all channels, internal only
    (kappa_int and kappa_q), left port only and right port only. Their
    eigenvalues are assigned to the Hermitian modes by eigenvector overlap.

    Args:
        H (np.ndarray): Hermitian Hamiltonian
        lm (LossModel): loss rates
        qubit (bool): H carries the qubit as last basis state

    Returns:
        (ModeRates)
    """

    frequency, reference = linalg.eigh(H)

    rates = {}
    for name, part in zip(RATE_NAMES, ["internal", "L", "R", "all"]):
        values = _mode_eigenvalues(H, lm, qubit, part, reference)
        rates[name] = -2 * values.imag

    return ModeRates(frequency=frequency, **rates)


def perturbative_rates(H, lm, qubit=True):
    """First-order rates <v_m|K|v_m> of the Hermitian modes"""

    N = H.shape[0] - 1 if qubit else H.shape[0]
    _, vectors = linalg.eigh(H)

    return np.einsum("im,ij,jm->m", vectors, lm.loss_matrix(N, qubit), vectors)


@dataclass
class ReflectionTraceParams:
    """Single-mode reflection model of both ports"""

    omega_m: float
    gamma_ext_L: float
    gamma_ext_R: float
    gamma_int: float
    A_L: float = 1.0
    alpha_L: float = 0.0
    phi_L: float = 0.0
    A_R: float = 1.0
    alpha_R: float = 0.0
    phi_R: float = 0.0

    def __post_init__(self):

        if self.A_L <= 0 or self.A_R <= 0:
            raise ConfigError(cm.error.openloss.amplitude)

    @property
    def gamma_tot(self):
        return self.gamma_ext_L + self.gamma_ext_R + self.gamma_int


def _reflection(
    omega,
    port,
    omega_m,
    gamma_ext_L,
    gamma_ext_R,
    gamma_int,
    A_L,
    alpha_L,
    phi_L,
    A_R,
    alpha_R,
    phi_R,
):
    """joint reflection of both ports, port = 0 for left and 1 for right"""

    right = np.asarray(port) == 1
    A = np.where(right, A_R, A_L)
    alpha = np.where(right, alpha_R, alpha_L)
    phi = np.where(right, phi_R, phi_L)
    gamma = np.where(right, gamma_ext_R, gamma_ext_L)

    half_width = (gamma_ext_L + gamma_ext_R + gamma_int) / 2
    resonance = gamma * np.exp(1j * phi) / (1j * (omega - omega_m) + half_width)

    return A * np.exp(-1j * alpha) * (1 - resonance)


def reflection_spectrum(params, omega):
    """S_LL and S_RR of a mode over the drive grid (GHz)

    Returns:
        (np.ndarray, np.ndarray): complex traces
    """

    omega = np.asarray(omega, dtype=float)
    values = asdict(params)

    S_LL = _reflection(omega, np.zeros(omega.shape), **values)
    S_RR = _reflection(omega, np.ones(omega.shape), **values)

    return S_LL, S_RR


class ReflectionModel(lmfit.model.Model):
    __doc__ = "two-port reflection model" + lmfit.models.COMMON_INIT_DOC

    def __init__(self, *args, **kwargs):

        kwargs.setdefault("independent_vars", ["omega", "port"])
        super().__init__(_reflection, *args, **kwargs)

        for name in ["gamma_ext_L", "gamma_ext_R", "gamma_int", "A_L", "A_R"]:
            self.set_param_hint(name, min=0)

    def guess(self, data, omega=None, port=None, **kwargs):
        """Seed the fit from the traces.

        The baseline is read on the trace ends, the resonance at the maximum
        of |1 - S/baseline|, the total width as the FWHM of |1 - S/baseline|^2
        and each port rate from the depth of its own trace.
        """

        seeds = {}
        depth = {}
        normalized = {}

        for side, code in (("L", 0), ("R", 1)):
            trace = data[port == code]
            ends = np.r_[trace[:5], trace[-5:]]
            baseline = ends.mean()
            seeds[f"A_{side}"] = np.abs(baseline)
            seeds[f"alpha_{side}"] = -np.angle(baseline)
            normalized[side] = 1 - trace / baseline

        f = omega[port == 0]
        total = np.abs(normalized["L"]) + np.abs(normalized["R"])
        peak = int(np.argmax(total))
        omega_m = f[peak]

        strongest = max(normalized, key=lambda s: np.abs(normalized[s][peak]))
        power = np.abs(normalized[strongest]) ** 2
        above = np.flatnonzero(power >= power[peak] / 2)
        gamma_tot = max(f[above[-1]] - f[above[0]], np.min(np.diff(f)))

        for side in ("L", "R"):
            dip = normalized[side][peak]
            depth[side] = gamma_tot * np.abs(dip) / 2
            seeds[f"phi_{side}"] = np.angle(dip)

        gamma_int = max(gamma_tot - depth["L"] - depth["R"], 1e-3 * gamma_tot)

        params = self.make_params(
            omega_m=omega_m,
            gamma_ext_L=depth["L"],
            gamma_ext_R=depth["R"],
            gamma_int=gamma_int,
            **seeds,
        )
        params[f"{self.prefix}omega_m"].set(min=f.min(), max=f.max())

        return lmfit.models.update_param_vals(params, self.prefix, **kwargs)


def fit_reflection(omega, S_LL, S_RR):
    """Fit both reflection traces of a mode in the complex plane.

    Args:
        omega (np.ndarray): drive grid (GHz), shared by the two traces
        S_LL, S_RR (np.ndarray): complex reflection traces

    Returns:
        (ReflectionTraceParams, lmfit.model.ModelResult)
    """

    omega = np.asarray(omega, dtype=float)
    data = np.r_[np.asarray(S_LL), np.asarray(S_RR)]
    f = np.r_[omega, omega]
    port = np.r_[np.zeros(len(omega)), np.ones(len(omega))]

    model = ReflectionModel()
    guess = model.guess(data, omega=f, port=port)
    result = model.fit(data, params=guess, omega=f, port=port)

    values = result.params.valuesdict()
    if not result.success or not np.all(np.isfinite(list(values.values()))):
        raise NumericError(cm.error.openloss.fit.format(result.redchi))

    logger.debug(result.fit_report())

    return ReflectionTraceParams(**values), result


def disorder_ensemble(tb, lm, sigma, M, seed, workers=1, percentiles=None):
    """Percentile bands of the bare-array mode rates under site disorder.

    Every realization draws gaussian site offsets from its own child of the
    master seed, so the bands do not depend on the worker count.

    Args:
        tb (TightBindingParams): array hoppings
        lm (LossModel): loss rates, the qubit is left out
        sigma (float): standard deviation of the offsets (GHz)
        M (int): number of realizations, at least param.MIN_REALIZATIONS
        seed (int): master seed
        workers (int): parallel realizations
        percentiles (tuple): low and high percentiles

    Returns:
        (pd.DataFrame): per mode, mean, low and high of every rate
    """

    if M < param.MIN_REALIZATIONS:
        raise ConfigError(
            cm.error.openloss.realizations.format(M, param.MIN_REALIZATIONS)
        )
    if seed is None:
        raise ConfigError(cm.error.config.missing.format("sweep.seed"))

    low, high = param.PERCENTILES if percentiles is None else percentiles
    children = np.random.SeedSequence(seed).spawn(M)

    def realization(child):
        disorder = draw_disorder(tb.N, sigma, child)
        H = tight_binding_matrix(tb, disorder.delta_omega)
        rates = extract_mode_rates(H, lm, qubit=False)
        return np.array([getattr(rates, name) for name in RATE_NAMES])

    samples = np.array(
        parallel_map(realization, children, workers, desc=cm.progress.ensemble)
    )

    df = pd.DataFrame({"m": np.arange(1, tb.N + 1)})
    for i, name in enumerate(RATE_NAMES):
        df[f"{name}_mean"] = samples[:, i].mean(axis=0)
        df[f"{name}_low"] = np.percentile(samples[:, i], low, axis=0)
        df[f"{name}_high"] = np.percentile(samples[:, i], high, axis=0)

    return df


def drive_line_rate(omega_q, C_c, C_sigma, Z0):
    """Purcell rate through the drive line, omega^2 Z0 C_c^2 / C_sigma, as an
    ordinary frequency in GHz"""

    omega = 2 * np.pi * np.asarray(omega_q, dtype=float) * 1e9
    Gamma = omega**2 * Z0 * C_c**2 / C_sigma

    return Gamma / (2 * np.pi) / 1e9


def t1_limit(rate):
    """lifetime (us) of a decay rate given in GHz"""

    with np.errstate(divide="ignore"):
        return 1 / (2 * np.pi * np.asarray(rate, dtype=float)) / 1e3


def _dispersive_channel(gamma, coupling, Delta):
    with np.errstate(divide="ignore", invalid="ignore"):
        rate = np.sum(gamma * (coupling / Delta) ** 2, axis=-1)
    resonant = np.any(Delta == 0, axis=-1)

    return np.where(resonant, np.nan, rate), resonant


def purcell_budget(omega_q_grid, drive, readout, cca=None):
    """Qubit decay channels over a frequency grid.

    drive:   omega_q^2 Z0 C_c^2 / C_sigma
    readout: (gamma_ext + gamma_int) (g / Delta)^2
    array:   sum_n (gamma_n,int + gamma_n,ext) (G_n / Delta_n)^2

    A channel exactly resonant at some grid point is reported as nan there,
    the other channels are still evaluated.

    Args:
        omega_q_grid (array-like): bare qubit frequencies (GHz)
        drive (dict): C_c, C_sigma (F) and Z0 (Ohm)
        readout (dict): omega, g, gamma_ext, gamma_int (GHz)
        cca (dict, optional): Omega, G, gamma_int, gamma_ext per mode (GHz)

    Returns:
        (pd.DataFrame): rates (GHz) and T1 limits (us) per channel
    """

    grid = np.asarray(omega_q_grid, dtype=float)
    df = pd.DataFrame({"omega_q": grid})
    failures = []

    df["drive"] = drive_line_rate(grid, drive["C_c"], drive["C_sigma"], drive["Z0"])

    Delta = (readout["omega"] - grid)[:, None]
    gamma = readout["gamma_ext"] + readout["gamma_int"]
    df["readout"], resonant = _dispersive_channel(gamma, readout["g"], Delta)
    if resonant.any():
        failures.append(cm.error.openloss.purcell.format("readout"))

    if cca is not None:
        Delta = np.asarray(cca["Omega"])[None, :] - grid[:, None]
        gamma = np.asarray(cca["gamma_int"]) + np.asarray(cca["gamma_ext"])
        df["cca"], resonant = _dispersive_channel(gamma, np.asarray(cca["G"]), Delta)
        if resonant.any():
            failures.append(cm.error.openloss.purcell.format("cca"))

    channels = [c for c in ("drive", "readout", "cca") if c in df]
    df["total"] = df[channels].sum(axis=1, skipna=False)
    for c in channels + ["total"]:
        df[f"T1_{c}"] = t1_limit(df[c])

    for failure in failures:
        logger.warning(failure)
    df.attrs["failures"] = failures

    return df


def photon_number(P, omega_m, gamma_port, gamma_tot):
    """Steady intra-mode photon number of a resonant drive.

    n = gamma_port P / (hbar omega) / (gamma_tot / 2)^2 with angular rates.

    Args:
        P (float | np.ndarray): power reaching the device (W)
        omega_m (float): mode frequency (GHz)
        gamma_port (float): rate of the driven port (GHz)
        gamma_tot (float | np.ndarray): total rate (GHz)
    """

    def angular(f):
        return 2 * np.pi * np.asarray(f) * 1e9

    flux = np.asarray(P) / (constants.hbar * angular(omega_m))

    return angular(gamma_port) * flux / (angular(gamma_tot) / 2) ** 2


def _internal_rate(gamma_int):
    """constant rate or tabulated (n, gamma) pairs, linearly interpolated"""

    if np.ndim(gamma_int) == 0:
        return lambda n: float(gamma_int)

    n_table, gamma_table = (np.asarray(a, dtype=float) for a in gamma_int)
    order = np.argsort(n_table)

    return lambda n: float(np.interp(n, n_table[order], gamma_table[order]))


def ac_stark_model(
    P_in,
    attenuation,
    omega_m,
    gamma_ext_port,
    gamma_ext_other,
    gamma_int,
    chi,
    omega_q0,
    tol=1e-12,
    max_iter=None,
):
    """Self-consistent photon number and AC-Stark shifted dressed qubit.

    The photon number depends on the internal rate, which may itself depend
    on the photon number; the fixed point n = f(n) is iterated from n = 0.
    The qubit then sits at omega_q0 + 2 chi n.

    Args:
        P_in (float | array-like): source power (W)
        attenuation (float): line attenuation (dB)
        omega_m (float): driven mode frequency (GHz)
        gamma_ext_port (float): rate of the driven port (GHz)
        gamma_ext_other (float): rate of the other port (GHz)
        gamma_int (float | tuple): constant rate or (n, gamma) table (GHz)
        chi (float): dispersive shift per photon (GHz)
        omega_q0 (float): unshifted dressed qubit frequency (GHz)

    Returns:
        (np.ndarray, np.ndarray): photon numbers, shifted qubit frequencies
    """

    max_iter = param.STARK_MAX_ITER if max_iter is None else max_iter
    internal = _internal_rate(gamma_int)

    powers = np.atleast_1d(np.asarray(P_in, dtype=float)) * 10 ** (-attenuation / 10)
    n = np.zeros_like(powers)

    for i, P in enumerate(powers):
        current = 0.0
        for _ in range(max_iter):
            gamma_tot = gamma_ext_port + gamma_ext_other + internal(current)
            updated = float(photon_number(P, omega_m, gamma_ext_port, gamma_tot))
            if abs(updated - current) <= tol * max(1.0, abs(updated)):
                current = updated
                break
            current = updated
        else:
            raise NumericError(cm.error.openloss.stark.format(P, max_iter))
        n[i] = current

    return n, omega_q0 + 2 * chi * n


def fit_attenuation(P_in, omega_q, **model):
    """Fit the line attenuation and the unshifted qubit from measured shifts.

    Args:
        P_in (np.ndarray): source powers (W)
        omega_q (np.ndarray): measured dressed qubit frequencies (GHz)
        **model: remaining ac_stark_model arguments (omega_m, gamma_ext_port,
            gamma_ext_other, gamma_int, chi)

    Returns:
        (float, float, lmfit.model.ModelResult): attenuation (dB), omega_q0
    """

    P_in = np.asarray(P_in, dtype=float)
    omega_q = np.asarray(omega_q, dtype=float)

    def stark(P_in, attenuation, omega_q0):
        return ac_stark_model(P_in, attenuation, omega_q0=omega_q0, **model)[1]

    slope, intercept = np.polyfit(P_in, omega_q, 1)
    reference = stark(np.array([1.0]), 0.0, 0.0)[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        guess = -10 * np.log10(slope / reference)
    if not np.isfinite(guess):
        raise NumericError(cm.error.openloss.fit.format(slope))

    fit_model = lmfit.Model(stark, independent_vars=["P_in"])
    result = fit_model.fit(omega_q, P_in=P_in, attenuation=guess, omega_q0=intercept)

    if not result.success:
        raise NumericError(cm.error.openloss.fit.format(result.redchi))

    values = result.params.valuesdict()

    return values["attenuation"], values["omega_q0"], result


def gain_from_baseline(P_in, P_out, attenuation):
    """Output line gain (dB) from the reflection baseline: P_out - P_in + A"""

    return np.asarray(P_out) - np.asarray(P_in) + attenuation
