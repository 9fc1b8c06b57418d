"""Synthetic spectroscopy and time-frequency analysis of simulated records."""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import fft, linalg
from scipy.signal import windows

import component.parameter as param
from component.message import cm

from .errors import ConfigError
from .modes import dressed_transitions
from .parallel import parallel_map

__all__ = [
    "TransmissionMap",
    "FFTMap",
    "Spectrogram",
    "transmission_map",
    "fft_map",
    "transition_overlay",
    "spectrogram",
]

logger = logging.getLogger(__name__)

WINDOWS = ("hann", "rectangular")


def _window(kind, n):

    if kind not in WINDOWS:
        raise ConfigError(cm.error.analysis.window.format(kind))

    return windows.hann(n, sym=False) if kind == "hann" else np.ones(n)


def _check_monotone(grid, name):

    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2 or np.any(np.diff(grid) <= 0):
        raise ConfigError(cm.error.analysis.monotone.format(name))

    return grid


@dataclass
class TransmissionMap:
    """S21(omega_q, omega_p), one row per qubit frequency"""

    omega_p: np.ndarray
    omega_q: np.ndarray
    S21: np.ndarray

    @property
    def magnitude(self):
        return np.abs(self.S21)

    def ridges(self):
        """drive frequencies of the local maxima of |S21| in every row"""

        mag = self.magnitude
        inner = (mag[:, 1:-1] > mag[:, :-2]) & (mag[:, 1:-1] > mag[:, 2:])

        return [self.omega_p[1:-1][row] for row in inner]

    def to_frame(self):

        q, p = np.meshgrid(self.omega_q, self.omega_p, indexing="ij")
        return pd.DataFrame(
            {"omega_q": q.ravel(), "omega_p": p.ravel(), "S21": self.magnitude.ravel()}
        )


def transmission_map(model, lm, omega_p, omega_q, workers=1):
    """Two-port transmission of the lossy array across a qubit sweep.

    S21(w) = -i v_R^T (w - H_NH)^-1 v_L, with v_port the port coupling
    vectors; the resolvent goes through the eigendecomposition of H_NH so a
    whole drive grid costs one diagonalization.

    Args:
        model (LatticeModel): array and coupling
        lm (LossModel): loss rates
        omega_p (array-like): drive frequencies (GHz), increasing
        omega_q (array-like): bare qubit frequencies (GHz), increasing

    Returns:
        (TransmissionMap)
    """

    omega_p = _check_monotone(omega_p, "omega_p")
    omega_q = _check_monotone(omega_q, "omega_q")

    N = model.N
    K = lm.loss_matrix(N)
    v_L, v_R = lm.port_vector(N, "L"), lm.port_vector(N, "R")

    def row(w_q):
        values, V = linalg.eig(model.hamiltonian(w_q) - 0.5j * K)
        right = linalg.solve(V, v_L.astype(complex))
        left = v_R @ V
        return -1j * (1 / (omega_p[:, None] - values[None, :])) @ (left * right)

    S21 = np.array(parallel_map(row, omega_q, workers, desc=cm.progress.transmission))

    return TransmissionMap(omega_p=omega_p, omega_q=omega_q, S21=S21)


@dataclass
class FFTMap:
    """Column spectra of a time map, frequencies in GHz for times in ns"""

    columns: np.ndarray
    frequencies: np.ndarray
    spectrum: np.ndarray
    n_fft: int

    @property
    def magnitude(self):
        return np.abs(self.spectrum)

    def peaks(self):
        """frequency of the strongest nonzero component of every column"""
        return self.frequencies[1:][np.argmax(self.magnitude[:, 1:], axis=1)]

    def energy(self):
        """Parseval energy of every column, sum |x|^2 of the processed signal"""

        power = np.abs(self.spectrum) ** 2
        weights = np.full(power.shape[1], 2.0)
        weights[0] = 1.0
        if self.n_fft % 2 == 0:
            weights[-1] = 1.0

        return power @ weights / self.n_fft

    def to_frame(self):

        c, f = np.meshgrid(self.columns, self.frequencies, indexing="ij")
        return pd.DataFrame(
            {"omega_q": c.ravel(), "frequency": f.ravel(), "magnitude": self.magnitude.ravel()}
        )


def fft_map(values, taus, columns=None, window="hann", pad=None):
    """Windowed FFT along tau of every column of a time map.

    Each column has its mean removed, is multiplied by the window and zero
    padded to pad times its length before the real FFT.

    Args:
        values (np.ndarray): map of shape (columns, taus)
        taus (array-like): uniform time grid (ns)
        columns (array-like): column coordinates, e.g. qubit frequencies
        window (str): "hann" or "rectangular"
        pad (int): zero padding factor
    """

    pad = param.FFT_PAD if pad is None else int(pad)
    values = np.atleast_2d(np.asarray(values, dtype=float))
    taus = np.asarray(taus, dtype=float)
    n = values.shape[1]

    if n < param.FFT_MIN_SAMPLES:
        raise ConfigError(cm.error.analysis.samples.format(n, param.FFT_MIN_SAMPLES))

    steps = np.diff(taus)
    if len(taus) != n or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
        raise ConfigError(cm.error.analysis.uniform)

    processed = (values - values.mean(axis=1, keepdims=True)) * _window(window, n)
    n_fft = pad * n

    columns = np.arange(values.shape[0]) if columns is None else np.asarray(columns)

    return FFTMap(
        columns=columns,
        frequencies=fft.rfftfreq(n_fft, d=steps[0]),
        spectrum=fft.rfft(processed, n=n_fft, axis=1),
        n_fft=n_fft,
    )


def transition_overlay(spectrum, orders=(1, 2)):
    """Dressed transition frequencies to lay over an FFT map.

    Returns:
        (pd.DataFrame): omega_q, order, m and the difference omega_{m+order} - omega_m
    """

    frames = []
    for order in orders:
        delta = dressed_transitions(spectrum.omega_tilde, order)
        q, m = np.meshgrid(
            spectrum.omega_q_grid, np.arange(1, delta.shape[1] + 1), indexing="ij"
        )
        frames.append(
            pd.DataFrame(
                {
                    "omega_q": q.ravel(),
                    "order": order,
                    "m": m.ravel(),
                    "transition": delta.ravel(),
                }
            )
        )

    return pd.concat(frames, ignore_index=True)


@dataclass
class Spectrogram:
    times: np.ndarray
    "np.ndarray: window centers (ns)"

    frequencies: np.ndarray
    "np.ndarray: frequency axis (GHz), two-sided for complex records"

    magnitude: np.ndarray
    "np.ndarray: shape (times, frequencies)"

    def ridge(self):
        """frequency of maximal magnitude in every window"""
        return self.frequencies[np.argmax(self.magnitude, axis=1)]

    def to_frame(self):

        t, f = np.meshgrid(self.times, self.frequencies, indexing="ij")
        return pd.DataFrame(
            {"t": t.ravel(), "frequency": f.ravel(), "magnitude": self.magnitude.ravel()}
        )


def spectrogram(record, dt=1.0, window=200.0, step=1.0, kind="hann", pad=1):
    """Sliding-window FFT magnitude of a field record.

    Args:
        record (np.ndarray): field samples, complex records keep both sides
            of the spectrum around the demodulation frame
        dt (float): sampling step (ns)
        window (float): window length (ns)
        step (float): window shift (ns)
        kind (str): "hann" or "rectangular"
        pad (int): zero padding factor

    Returns:
        (Spectrogram)
    """

    record = np.asarray(record)
    size = int(round(window / dt))
    shift = max(1, int(round(step / dt)))

    if len(record) < size or size < 2:
        raise ConfigError(cm.error.analysis.record.format(len(record) * dt, window))

    frames = np.lib.stride_tricks.sliding_window_view(record, size)[::shift]
    frames = frames * _window(kind, size)
    n_fft = pad * size

    if np.iscomplexobj(record):
        spectra = fft.fftshift(fft.fft(frames, n=n_fft, axis=1), axes=1)
        frequencies = fft.fftshift(fft.fftfreq(n_fft, d=dt))
    else:
        spectra = fft.rfft(frames, n=n_fft, axis=1)
        frequencies = fft.rfftfreq(n_fft, d=dt)

    times = (np.arange(len(frames)) * shift + (size - 1) / 2) * dt

    return Spectrogram(times=times, frequencies=frequencies, magnitude=np.abs(spectra))
