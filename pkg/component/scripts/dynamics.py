"""Time evolution of the single-excitation sector under flux pulses.

Time is in ns and frequencies in GHz, the evolution reads
d psi / dt = -2 pi i (H - i K / 2) psi. States live in a frame rotating at
`frame` GHz, so output fields are the demodulated records at that frequency.

Two backends share the same physics:

- "nonhermitian": amplitudes of the one-excitation vector, the vacuum
  amplitude stays constant and the vacuum population absorbs the losses,
- "lindblad": the (N+2) x (N+2) density matrix (vacuum first) with the
  dissipator written for the full loss matrix,
  2 pi (|0><0| Tr(K rho_11) - {K, rho} / 2).

Both integrate the photon numbers lost through each port alongside the
state, as cumulative integrals of 2 pi <K_port>.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import linalg
from scipy.integrate import solve_ivp, trapezoid

import component.parameter as param
from component.message import cm

from .errors import ConfigError, NumericError
from .openloss import extract_mode_rates
from .parallel import parallel_map

__all__ = [
    "BACKENDS",
    "Hold",
    "LinearRamp",
    "SineModulation",
    "PulseSchedule",
    "Trajectory",
    "QuenchMap",
    "SwapResult",
    "EmissionResult",
    "evolve",
    "quench_scan",
    "parametric_swap",
    "swap_calibration",
    "optimal_emission_point",
    "emission_protocol",
    "ideal_emission",
    "rescale_emission",
    "dressed_qubit_state",
    "swap_estimate",
]

logger = logging.getLogger(__name__)

BACKENDS = ("nonhermitian", "lindblad")


@dataclass(frozen=True)
class Hold:
    omega_q: float
    duration: float

    @property
    def start(self):
        return self.omega_q

    @property
    def end(self):
        return self.omega_q

    def frequency(self, t):
        return np.full(np.shape(t), self.omega_q) if np.ndim(t) else self.omega_q

    def describe(self):
        return f"hold:{self.omega_q}:{self.duration}"


@dataclass(frozen=True)
class LinearRamp:
    start: float
    end: float
    duration: float

    def frequency(self, t):
        return self.start + (self.end - self.start) * np.asarray(t) / self.duration

    def describe(self):
        return f"ramp:{self.start}:{self.end}:{self.duration}"


@dataclass(frozen=True)
class SineModulation:
    """omega_q(t) = center + amplitude envelope(t) sin(2 pi mod_frequency t + phase)

    The supergaussian envelope is exp(-((t - T/2)^2 / (2 width^2))^order),
    width defaults to a quarter of the duration.
    """

    center: float
    amplitude: float
    mod_frequency: float
    duration: float
    envelope: str = "rectangular"
    order: int = 2
    width: float = None
    phase: float = 0.0

    def __post_init__(self):

        if self.envelope not in ("rectangular", "supergaussian"):
            raise ConfigError(cm.error.dynamics.envelope.format(self.envelope))

    @property
    def start(self):
        return self.frequency(0.0)

    @property
    def end(self):
        return self.frequency(self.duration)

    def shape(self, t):

        t = np.asarray(t, dtype=float)
        if self.envelope == "rectangular":
            return np.ones_like(t)

        width = self.width or self.duration / 4
        x = (t - self.duration / 2) ** 2 / (2 * width**2)

        return np.exp(-(x**self.order))

    def frequency(self, t):

        carrier = np.sin(2 * np.pi * self.mod_frequency * np.asarray(t) + self.phase)

        return self.center + self.amplitude * self.shape(t) * carrier

    def describe(self):
        return (
            f"sine:{self.center}:{self.amplitude}:{self.mod_frequency}:"
            f"{self.duration}:{self.envelope}:{self.order}"
        )


SEGMENTS = {"hold": Hold, "ramp": LinearRamp, "sine": SineModulation}


@dataclass
class PulseSchedule:
    """Contiguous sequence of flux segments driving the qubit frequency"""

    segments: list

    def __post_init__(self):

        if not self.segments:
            raise ConfigError(cm.error.dynamics.empty_schedule)

        for segment in self.segments:
            if not segment.duration > 0:
                raise ConfigError(cm.error.dynamics.duration.format(segment))

        for previous, current in zip(self.segments[:-1], self.segments[1:]):
            if isinstance(previous, SineModulation) or isinstance(
                current, SineModulation
            ):
                continue
            if abs(previous.end - current.start) > 1e-9:
                raise ConfigError(
                    cm.error.dynamics.discontinuous.format(previous.end, current.start)
                )

    @classmethod
    def parse(cls, text):
        """Build a schedule from its compact text form, the inverse of
        describe(), e.g. 'hold:7.62:10, ramp:7.62:8.1:2.4'"""

        segments = []
        for item in filter(None, (s.strip() for s in text.split(","))):
            kind, *args = item.split(":")
            if kind not in SEGMENTS:
                raise ConfigError(cm.error.dynamics.segment.format(kind))
            if kind == "sine" and len(args) > 4:
                numbers = [float(a) for a in args[:4]]
                extra = [args[4]] + [int(a) for a in args[5:6]]
                segments.append(SineModulation(*numbers, *extra))
            else:
                segments.append(SEGMENTS[kind](*[float(a) for a in args]))

        return cls(segments)

    def describe(self):
        return ", ".join(s.describe() for s in self.segments)

    @property
    def boundaries(self):
        return np.r_[0.0, np.cumsum([s.duration for s in self.segments])]

    @property
    def duration(self):
        return float(self.boundaries[-1])

    def omega_q(self, t):
        """qubit frequency over an array of times"""

        t = np.atleast_1d(np.asarray(t, dtype=float))
        bounds = self.boundaries
        index = np.clip(np.searchsorted(bounds, t, side="right") - 1, 0, None)
        index = np.minimum(index, len(self.segments) - 1)
        out = np.empty_like(t)
        for i, segment in enumerate(self.segments):
            mask = index == i
            out[mask] = segment.frequency(t[mask] - bounds[i])

        return out

    def __add__(self, other):
        return PulseSchedule(self.segments + other.segments)


@dataclass
class _System:
    """Affine Hamiltonian H0 + omega_q P and its loss matrices"""

    H0: np.ndarray
    P: np.ndarray
    K: np.ndarray
    K_L: np.ndarray
    K_R: np.ndarray
    K_int: np.ndarray
    frame: float
    v_L: np.ndarray
    v_R: np.ndarray

    @property
    def dim(self):
        return self.H0.shape[0]

    def hermitian(self, omega_q):
        return self.H0 + omega_q * self.P - self.frame * np.eye(self.dim)

    def generator(self, omega_q):
        return self.hermitian(omega_q) - 0.5j * self.K


def _system(builder, lm, frame=None):

    H0 = np.asarray(builder(0.0), dtype=float)
    P = np.asarray(builder(1.0), dtype=float) - H0
    if not np.allclose(builder(2.0), H0 + 2 * P, rtol=0, atol=1e-12):
        raise ConfigError(cm.error.dynamics.builder)

    N = H0.shape[0] - 1
    frame = float(np.mean(np.diag(H0)[:N])) if frame is None else float(frame)

    return _System(
        H0=H0,
        P=P,
        K=lm.loss_matrix(N),
        K_L=lm.loss_matrix(N, part="L"),
        K_R=lm.loss_matrix(N, part="R"),
        K_int=lm.loss_matrix(N, part="internal"),
        frame=frame,
        v_L=lm.port_vector(N, "L"),
        v_R=lm.port_vector(N, "R"),
    )


@dataclass
class Trajectory:
    """Time series of an evolution, fields in the rotating frame"""

    t: np.ndarray
    "np.ndarray: reporting times (ns)"

    P_e: np.ndarray
    "np.ndarray: bare qubit population"

    populations: np.ndarray
    "np.ndarray: site populations, shape (time, N)"

    ground: np.ndarray
    "np.ndarray: vacuum population"

    coherence: np.ndarray
    "np.ndarray: <s|rho|0> over the one-excitation basis, shape (time, N+1)"

    N_ph_L: np.ndarray
    "np.ndarray: cumulative photon number through the left port"

    N_ph_R: np.ndarray
    "np.ndarray: cumulative photon number through the right port"

    N_loss: np.ndarray
    "np.ndarray: cumulative internal and qubit loss"

    a_out_L: np.ndarray
    "np.ndarray: coherent left output field sqrt(kappa)<a_1> + sqrt(kappa')<a_2>"

    a_out_R: np.ndarray
    "np.ndarray: coherent right output field"

    excitation: float
    "float: initial one-excitation population"

    frame: float
    "float: rotating frame frequency (GHz)"

    backend: str = "nonhermitian"
    states: np.ndarray = field(default=None, repr=False)
    vacuum: complex = 0.0

    @property
    def intensity_L(self):
        """photon flux of the coherent left field (1/ns)"""
        return 2 * np.pi * np.abs(self.a_out_L) ** 2

    @property
    def intensity_R(self):
        return 2 * np.pi * np.abs(self.a_out_R) ** 2

    @property
    def trace(self):
        return self.ground + self.P_e + self.populations.sum(axis=1)

    @property
    def continuity(self):
        """excitation bookkeeping residual, zero up to the integrator tolerance"""

        inside = self.P_e + self.populations.sum(axis=1)
        return inside + self.N_ph_L + self.N_ph_R + self.N_loss - self.excitation

    @property
    def eta(self):
        """directionality (N_L - N_R) / (N_L + N_R) of the emitted photons"""

        N_L, N_R = self.N_ph_L[-1], self.N_ph_R[-1]
        return float((N_L - N_R) / (N_L + N_R))

    def density_matrix(self, k):
        """(N+2) x (N+2) density matrix at the k-th time, vacuum first"""

        if self.backend == "lindblad":
            return self.states[k]

        psi = self.states[k]
        rho = np.zeros((len(psi) + 1, len(psi) + 1), dtype=complex)
        rho[0, 0] = self.ground[k]
        rho[1:, 0] = self.coherence[k]
        rho[0, 1:] = self.coherence[k].conj()
        rho[1:, 1:] = np.outer(psi, psi.conj())

        return rho

    def population_in(self, vector):
        """population of a one-excitation state over time"""

        v = np.asarray(vector, dtype=complex)
        if self.backend == "lindblad":
            rho = self.states[:, 1:, 1:]
            return np.einsum("i,tij,j->t", v.conj(), rho, v).real

        return np.abs(self.states @ v.conj()) ** 2

    def to_frame(self):

        return pd.DataFrame(
            {
                "t": self.t,
                "P_e": self.P_e,
                "N_ph_L": self.N_ph_L,
                "N_ph_R": self.N_ph_R,
                "I_L": self.intensity_L,
                "I_R": self.intensity_R,
            }
        )


def _report_grid(duration, step):
    n = int(np.floor(duration / step + 1e-9))
    grid = np.arange(n + 1) * step
    if duration - grid[-1] > 1e-9:
        grid = np.r_[grid, duration]
    return grid


def _integrate(rhs, y0, t_span, t_eval, rtol, atol):

    try:
        sol = solve_ivp(
            rhs, t_span, y0, method="DOP853", t_eval=t_eval, rtol=rtol, atol=atol
        )
    except ValueError as e:
        raise NumericError(cm.error.dynamics.solver.format(e)) from e

    if sol.status < 0:
        raise NumericError(cm.error.dynamics.solver.format(sol.message))

    return sol


def _segments(schedule, grid):
    """(segment, start time, end time, report times inside) in order, each
    report time assigned once"""

    bounds = schedule.boundaries
    last = len(schedule.segments) - 1
    for i, segment in enumerate(schedule.segments):
        if i == last:
            mask = grid >= bounds[i]
        else:
            mask = (grid >= bounds[i]) & (grid < bounds[i + 1])
        yield segment, bounds[i], bounds[i + 1], grid[mask]


def _evaluation_times(times, t0, t1):
    """report times clipped to the segment, closed by its end exactly once"""

    t_eval = np.clip(times, t0, t1)
    if not len(t_eval) or t_eval[-1] < t1:
        t_eval = np.r_[t_eval, t1]

    return t_eval


def _exp_integral(c, t):
    """integral of exp(c s) over [0, t], elementwise"""

    x = c * t
    small = np.abs(x) < 1e-6
    safe = np.where(small, 1.0, c)

    return np.where(small, t * (1 + x / 2 + x**2 / 6), np.expm1(x) / safe)


def _hold_amplitudes(system, flux_ops, omega_q, y, offsets):
    """Closed-form amplitudes and port integrals under a constant generator.

    With M = V diag(lambda) V^-1 the state is V exp(-2 pi i lambda s) a and
    every flux integral is a sum of exponential integrals, so the norm lost
    and the photons counted agree to rounding. Returns None when V is too
    ill-conditioned for the expansion.
    """

    dim = system.dim
    values, V = linalg.eig(system.generator(omega_q))
    if np.linalg.cond(V) > 1e8:
        return None

    a = linalg.solve(V, y[:dim])
    rates = -2j * np.pi * values
    offsets = np.asarray(offsets, dtype=float)

    psi = (V @ (a[:, None] * np.exp(np.outer(rates, offsets)))).T

    # Re(rates) <= 0 so the exponents never grow
    c = np.conj(rates)[:, None] + rates[None, :]
    E = _exp_integral(c[..., None], offsets[None, None, :])
    weights = np.outer(a.conj(), a)

    out = np.empty((len(offsets), len(y)), dtype=complex)
    out[:, :dim] = psi
    for k, K in enumerate(flux_ops):
        W = V.conj().T @ K @ V
        flux = 2 * np.pi * np.einsum("ij,ijt->t", weights * W, E).real
        out[:, dim + k] = y[dim + k] + flux

    return out


def _run(system, y0, schedule, grid, rhs_factory, rtol, atol, hold=None):
    """integrate segment by segment, collecting the states on the grid

    hold, when given, maps (segment, state, offsets) to the states at those
    offsets for Hold segments, or None to fall back to the integrator.
    """

    samples = []
    y = y0
    for segment, t0, t1, times in _segments(schedule, grid):
        t_eval = _evaluation_times(times, t0, t1)

        states = None
        if hold is not None and isinstance(segment, Hold):
            states = hold(segment, y, t_eval - t0)

        if states is None:
            rhs = rhs_factory(segment, t0)
            states = _integrate(rhs, y, (t0, t1), t_eval, rtol, atol).y.T

        samples.append(states[: len(times)])
        y = states[-1]

    return np.concatenate(samples)


def evolve(
    builder,
    lm,
    initial,
    schedule,
    backend="nonhermitian",
    rtol=None,
    atol=None,
    report_step=None,
    frame=None,
    vacuum=None,
):
    """Integrate the single-excitation dynamics along a flux schedule.

    Args:
        builder (callable): omega_q -> (N+1) x (N+1) Hamiltonian, affine in
            omega_q (only the qubit entry may depend on it)
        lm (LossModel): loss rates
        initial (np.ndarray): one-excitation amplitudes (N+1), or for the
            lindblad backend an (N+2) x (N+2) density matrix, vacuum first
        schedule (PulseSchedule): qubit frequency along time
        backend (str): "nonhermitian" or "lindblad"
        rtol, atol (float): integrator tolerances
        report_step (float): reporting grid step (ns)
        frame (float): rotating frame (GHz), the mean cavity frequency by default
        vacuum (complex): vacuum amplitude of a pure initial state, by default
            sqrt(1 - |psi|^2)

    Returns:
        (Trajectory)
    """

    if backend not in BACKENDS:
        raise ConfigError(cm.error.dynamics.backend.format(backend))

    rtol = param.RTOL if rtol is None else rtol
    atol = param.ATOL if atol is None else atol
    report_step = param.REPORT_STEP if report_step is None else report_step
    if not report_step > 0:
        raise ConfigError(cm.error.dynamics.report_step.format(report_step))

    system = _system(builder, lm, frame)
    dim = system.dim
    grid = _report_grid(schedule.duration, report_step)

    initial = np.asarray(initial, dtype=complex)
    if initial.ndim == 1:
        if initial.shape != (dim,):
            raise ConfigError(cm.error.dynamics.initial.format(initial.shape, dim))
        norm = float(np.vdot(initial, initial).real)
        if norm > 1 + 1e-12:
            raise ConfigError(cm.error.dynamics.norm.format(norm))
        if vacuum is None:
            vacuum = np.sqrt(max(0.0, 1 - norm))
    elif backend == "nonhermitian":
        raise ConfigError(cm.error.dynamics.mixed)
    elif initial.shape != (dim + 1, dim + 1):
        raise ConfigError(cm.error.dynamics.initial.format(initial.shape, dim + 1))

    logger.debug(cm.log.evolve.format(backend, schedule.duration, len(grid)))

    flux_ops = (system.K_L, system.K_R, system.K_int)

    if backend == "nonhermitian":
        trajectory = _evolve_amplitudes(
            system, initial, complex(vacuum), schedule, grid, flux_ops, rtol, atol
        )
    else:
        if initial.ndim == 1:
            state = np.r_[vacuum, initial]
            initial = np.outer(state, state.conj())
        trajectory = _evolve_density(
            system, initial, schedule, grid, flux_ops, rtol, atol
        )

    drift = float(np.max(np.abs(trajectory.trace - 1)))
    if drift > param.TRACE_TOLERANCE:
        raise NumericError(cm.error.dynamics.trace.format(drift))

    return trajectory


def _evolve_amplitudes(system, psi0, vacuum, schedule, grid, flux_ops, rtol, atol):

    dim = system.dim

    def factory(segment, t0):
        def rhs(t, y):
            psi = y[:dim]
            M = system.generator(segment.frequency(t - t0))
            flux = [2 * np.pi * np.vdot(psi, K @ psi).real for K in flux_ops]
            return np.r_[-2j * np.pi * (M @ psi), flux]

        return rhs

    def hold(segment, y, offsets):
        return _hold_amplitudes(system, flux_ops, segment.omega_q, y, offsets)

    y0 = np.r_[psi0, np.zeros(3)].astype(complex)
    samples = _run(system, y0, schedule, grid, factory, rtol, atol, hold)

    psi = samples[:, :dim]
    N_L, N_R, N_loss = samples[:, dim:].real.T
    excitation = float(np.vdot(psi0, psi0).real)
    coherence = psi * np.conj(vacuum)

    return Trajectory(
        t=grid,
        P_e=np.abs(psi[:, -1]) ** 2,
        populations=np.abs(psi[:, :-1]) ** 2,
        ground=abs(vacuum) ** 2 + N_L + N_R + N_loss,
        coherence=coherence,
        N_ph_L=N_L,
        N_ph_R=N_R,
        N_loss=N_loss,
        a_out_L=coherence @ system.v_L,
        a_out_R=coherence @ system.v_R,
        excitation=excitation,
        frame=system.frame,
        backend="nonhermitian",
        states=psi,
        vacuum=vacuum,
    )


def _evolve_density(system, rho0, schedule, grid, flux_ops, rtol, atol):

    dim = system.dim
    D = dim + 1
    K_full = np.zeros((D, D))
    K_full[1:, 1:] = system.K

    def factory(segment, t0):
        def rhs(t, y):
            rho = y[: D * D].reshape(D, D)
            H = np.zeros((D, D))
            H[1:, 1:] = system.hermitian(segment.frequency(t - t0))

            drho = -2j * np.pi * (H @ rho - rho @ H)
            drho -= np.pi * (K_full @ rho + rho @ K_full)
            rho11 = rho[1:, 1:]
            drho[0, 0] += 2 * np.pi * np.trace(system.K @ rho11)

            flux = [2 * np.pi * np.trace(K @ rho11).real for K in flux_ops]
            return np.r_[drho.ravel(), flux]

        return rhs

    y0 = np.r_[rho0.ravel(), np.zeros(3)].astype(complex)
    samples = _run(system, y0, schedule, grid, factory, rtol, atol)

    rho = samples[:, : D * D].reshape(-1, D, D)
    N_L, N_R, N_loss = samples[:, D * D :].real.T
    populations = np.einsum("tii->ti", rho).real
    coherence = rho[:, 1:, 0]

    return Trajectory(
        t=grid,
        P_e=populations[:, -1],
        populations=populations[:, 1:-1],
        ground=populations[:, 0],
        coherence=coherence,
        N_ph_L=N_L,
        N_ph_R=N_R,
        N_loss=N_loss,
        a_out_L=coherence @ system.v_L,
        a_out_R=coherence @ system.v_R,
        excitation=float(np.trace(rho0[1:, 1:]).real),
        frame=system.frame,
        backend="lindblad",
        states=rho,
    )


def dressed_qubit_state(H):
    """eigenvector of H with the largest qubit weight, and its frequency"""

    values, vectors = linalg.eigh(H)
    index = int(np.argmax(np.abs(vectors[-1]) ** 2))

    return vectors[:, index], float(values[index])


def _dressed_mode(H, mode):

    values, vectors = linalg.eigh(H)
    if not 1 <= mode <= len(values):
        raise ConfigError(cm.error.lattice.mode_index.format(mode, len(values)))

    return vectors[:, mode - 1], float(values[mode - 1])


def _ramp_propagator(system, segment, rtol, atol):
    """non-Hermitian propagator over one segment"""

    dim = system.dim

    def rhs(t, y):
        U = y.reshape(dim, dim)
        return (-2j * np.pi * system.generator(segment.frequency(t)) @ U).ravel()

    y0 = np.eye(dim, dtype=complex).ravel()
    sol = _integrate(rhs, y0, (0.0, segment.duration), None, rtol, atol)

    return sol.y[:, -1].reshape(dim, dim)


@dataclass
class QuenchMap:
    """Recovered population P(target, tau) of the dressed qubit"""

    targets: np.ndarray
    taus: np.ndarray
    population: np.ndarray
    omega_init: float
    ramp_time: float

    def to_frame(self):

        target, tau = np.meshgrid(self.targets, self.taus, indexing="ij")
        return pd.DataFrame(
            {
                "omega_q": target.ravel(),
                "tau": tau.ravel(),
                "P_e": self.population.ravel(),
            }
        )


def quench_scan(
    builder,
    lm,
    omega_init,
    targets,
    taus,
    ramp_time=None,
    workers=1,
    rtol=None,
    atol=None,
):
    """Population left in the qubit after a flux excursion of duration tau.

    The dressed qubit at omega_init is excited, ramped linearly to the target
    in ramp_time, held for tau, ramped back and projected on the same
    dressed state. The ramps are propagated once per target, the holds
    through the eigendecomposition of the non-Hermitian generator, so every
    tau costs a single sum.

    Args:
        builder (callable): omega_q -> Hamiltonian
        lm (LossModel): loss rates
        omega_init (float): parking frequency (GHz)
        targets (array-like): hold frequencies (GHz)
        taus (array-like): hold durations (ns)
        ramp_time (float): duration of each ramp (ns)
        workers (int): targets computed in parallel

    Returns:
        (QuenchMap)
    """

    ramp_time = param.PROTOCOL["quench_ramp"] if ramp_time is None else ramp_time
    if ramp_time <= 0:
        raise ConfigError(cm.error.dynamics.duration.format(ramp_time))

    rtol = param.RTOL if rtol is None else rtol
    atol = param.ATOL if atol is None else atol

    system = _system(builder, lm)
    qubit, _ = dressed_qubit_state(builder(omega_init))
    taus = np.asarray(taus, dtype=float)
    targets = np.asarray(targets, dtype=float)

    def scan(target):
        up = _ramp_propagator(system, LinearRamp(omega_init, target, ramp_time), rtol, atol)
        down = _ramp_propagator(
            system, LinearRamp(target, omega_init, ramp_time), rtol, atol
        )
        values, V = linalg.eig(system.generator(target))
        a = linalg.solve(V, up @ qubit)
        b = qubit.conj() @ down @ V
        phases = np.exp(-2j * np.pi * np.outer(values, taus))
        return np.abs((b * a) @ phases) ** 2

    population = np.array(
        parallel_map(scan, targets, workers, desc=cm.progress.quench)
    )

    return QuenchMap(
        targets=targets,
        taus=taus,
        population=population,
        omega_init=float(omega_init),
        ramp_time=float(ramp_time),
    )


@dataclass
class SwapResult:
    trajectory: Trajectory
    fidelity: float
    "float: population of the target dressed mode at the end of the pulse"
    target: np.ndarray


def parametric_swap(
    builder,
    lm,
    omega_park,
    mode,
    mod_frequency,
    amplitude,
    duration,
    envelope="supergaussian",
    order=2,
    width=None,
    initial=None,
    **kwargs,
):
    """Transfer the dressed qubit into a dressed mode by flux modulation.

    Args:
        builder (callable): omega_q -> Hamiltonian
        lm (LossModel): loss rates
        omega_park (float): modulation center (GHz)
        mode (int): 1-based dressed mode at omega_park, ascending
        mod_frequency (float): modulation frequency (GHz)
        amplitude (float): frequency excursion (GHz)
        duration (float): pulse length (ns)
        envelope (str): "rectangular" or "supergaussian"
        initial (np.ndarray): starting amplitudes, the dressed qubit by default
        **kwargs: forwarded to evolve

    Returns:
        (SwapResult)
    """

    H = builder(omega_park)
    target, _ = _dressed_mode(H, mode)
    if initial is None:
        initial, _ = dressed_qubit_state(H)

    pulse = SineModulation(
        omega_park, amplitude, mod_frequency, duration, envelope, order, width
    )
    trajectory = evolve(builder, lm, initial, PulseSchedule([pulse]), **kwargs)
    fidelity = float(trajectory.population_in(target)[-1])

    logger.info(cm.log.swap.format(mode, mod_frequency, amplitude, fidelity))

    return SwapResult(trajectory=trajectory, fidelity=fidelity, target=target)


def swap_estimate(builder, omega_park, mode, duration, envelope="supergaussian", order=2, width=None):
    """First-order SWAP parameters between the dressed qubit and a dressed mode.

    A modulation A s(t) sin(2 pi nu t) of the qubit frequency couples the two
    dressed states through A u_q u_m, u being their qubit amplitudes. At
    nu = |omega_q~ - omega_m~| the rotating part exchanges the excitation at
    A u_q u_m / 2, a full transfer needs A = 1 / (2 |u_q u_m| integral of s).

    Returns:
        (float, float): modulation frequency and amplitude (GHz)
    """

    H = builder(omega_park)
    qubit, omega_qubit = dressed_qubit_state(H)
    target, omega_mode = _dressed_mode(H, mode)

    overlap = abs(qubit[-1] * target[-1])
    if overlap < 1e-12:
        raise NumericError(cm.error.dynamics.uncoupled.format(mode))

    pulse = SineModulation(omega_park, 0.0, 0.0, duration, envelope, order, width)
    t = np.linspace(0, duration, 2001)
    area = float(trapezoid(pulse.shape(t), t))

    return abs(omega_qubit - omega_mode), 1 / (2 * overlap * area)


def swap_calibration(
    builder,
    lm,
    omega_park,
    mode,
    frequencies,
    amplitudes,
    duration,
    workers=1,
    **kwargs,
):
    """Scan modulation frequency and amplitude at fixed duration.

    Returns:
        (pd.DataFrame): frequency, amplitude, population left in the dressed
            qubit and population transferred to the target mode
    """

    qubit, _ = dressed_qubit_state(builder(omega_park))
    cells = [(f, a) for a in amplitudes for f in frequencies]

    def cell(item):
        f, a = item
        result = parametric_swap(
            builder, lm, omega_park, mode, f, a, duration, **kwargs
        )
        remaining = float(result.trajectory.population_in(qubit)[-1])
        return f, a, remaining, result.fidelity

    rows = parallel_map(cell, cells, workers, desc=cm.progress.calibration)

    return pd.DataFrame(rows, columns=["frequency", "amplitude", "qubit", "transfer"])


def optimal_emission_point(builder, lm, mode, window, points=101, workers=1):
    """Qubit frequency of strongest port asymmetry of a dressed mode.

    chi_db of the mode is scanned over the window and its largest magnitude
    taken; an extremum sitting on the window edge is not a local optimum.

    Returns:
        (float, pd.DataFrame): optimal omega_q and the scanned chi_db
    """

    grid = np.linspace(window[0], window[1], points)

    def chi(omega_q):
        rates = extract_mode_rates(builder(omega_q), lm)
        return float(rates.chi_db[mode - 1])

    values = np.array(parallel_map(chi, grid, workers, desc=cm.progress.emission))
    scan = pd.DataFrame({"omega_q": grid, "chi_db": values})

    finite = np.where(np.isfinite(values), np.abs(values), -np.inf)
    best = int(np.argmax(finite))
    if best in (0, len(grid) - 1) or not np.isfinite(finite[best]):
        raise NumericError(cm.error.dynamics.optimum.format(mode, *window))

    return float(grid[best]), scan


@dataclass
class EmissionResult:
    trajectory: Trajectory
    N_L: float
    N_R: float
    eta: float
    omega_emit: float
    schedule: PulseSchedule
    mode: int
    transfer: float
    "float: population of the target dressed mode when the SWAP ends"
    swap_frequency: float
    swap_amplitude: float


def _swap_pulse(builder, omega_park, mode, frequency, amplitude, duration, envelope, order):
    """SWAP modulation into a dressed mode, first-order estimates filling
    the unset frequency or amplitude"""

    if frequency is None or amplitude is None:
        f, a = swap_estimate(builder, omega_park, mode, duration, envelope, order)
        frequency = f if frequency is None else frequency
        amplitude = a if amplitude is None else amplitude

    return SineModulation(
        omega_park, amplitude, frequency, duration, envelope, order
    )


def _emit(builder, lm, mode, omega_park, pulse, schedule, omega_emit, **kwargs):

    H = builder(omega_park)
    target, _ = _dressed_mode(H, mode)
    qubit, _ = dressed_qubit_state(H)

    trajectory = evolve(builder, lm, qubit / np.sqrt(2), schedule, **kwargs)
    N_L, N_R = float(trajectory.N_ph_L[-1]), float(trajectory.N_ph_R[-1])

    swap_end = schedule.boundaries[schedule.segments.index(pulse) + 1]
    k = int(np.argmin(np.abs(trajectory.t - swap_end)))
    transfer = float(trajectory.population_in(target)[k])

    result = EmissionResult(
        trajectory=trajectory,
        N_L=N_L,
        N_R=N_R,
        eta=trajectory.eta,
        omega_emit=float(omega_emit),
        schedule=schedule,
        mode=int(mode),
        transfer=transfer,
        swap_frequency=float(pulse.mod_frequency),
        swap_amplitude=float(pulse.amplitude),
    )
    logger.info(cm.log.emission.format(mode, result.N_L, result.N_R, result.eta))

    return result


def emission_protocol(
    builder,
    lm,
    mode,
    omega_init,
    omega_emit,
    swap_frequency=None,
    swap_amplitude=None,
    swap_duration=None,
    ramp_duration=None,
    hold=500.0,
    prep_delay=0.0,
    envelope="supergaussian",
    order=2,
    **kwargs,
):
    """Directional single-photon emission from a dressed mode.

    The dressed qubit at omega_init is prepared in an equal superposition
    with the vacuum (optionally left idle for prep_delay), swapped into the
    dressed mode by flux modulation, ramped adiabatically to omega_emit and
    held while the photon leaks out. An unset swap_frequency or
    swap_amplitude is estimated for the requested mode.

    Returns:
        (EmissionResult)
    """

    swap_duration = param.PROTOCOL["swap_duration"] if swap_duration is None else swap_duration
    ramp_duration = param.PROTOCOL["ramp_duration"] if ramp_duration is None else ramp_duration

    pulse = _swap_pulse(
        builder, omega_init, mode, swap_frequency, swap_amplitude, swap_duration, envelope, order
    )
    segments = [Hold(omega_init, prep_delay)] if prep_delay > 0 else []
    segments += [
        pulse,
        LinearRamp(omega_init, omega_emit, ramp_duration),
        Hold(omega_emit, hold),
    ]

    return _emit(
        builder, lm, mode, omega_init, pulse, PulseSchedule(segments), omega_emit, **kwargs
    )


def ideal_emission(
    builder,
    lm,
    mode,
    omega_emit,
    swap_frequency=None,
    swap_amplitude=None,
    swap_duration=None,
    hold=500.0,
    envelope="supergaussian",
    order=2,
    **kwargs,
):
    """Emission with the qubit parked at the emission point: the bound state
    is prepared there and swapped directly into the mode, no ramp."""

    swap_duration = param.PROTOCOL["swap_duration"] if swap_duration is None else swap_duration

    pulse = _swap_pulse(
        builder, omega_emit, mode, swap_frequency, swap_amplitude, swap_duration, envelope, order
    )
    schedule = PulseSchedule([pulse, Hold(omega_emit, hold)])

    return _emit(builder, lm, mode, omega_emit, pulse, schedule, omega_emit, **kwargs)


def rescale_emission(trajectory, gamma_sim, gamma_meas):
    """Scale the port photon numbers by Gamma = gamma_sim / gamma_meas.

    Args:
        trajectory (Trajectory): simulated emission
        gamma_sim (tuple): simulated (left, right) rates
        gamma_meas (tuple): measured (left, right) rates

    Returns:
        (pd.DataFrame): t, rescaled N_ph_L and N_ph_R, with the rescaled
            directionality in attrs["eta"]
    """

    gamma_sim = np.asarray(gamma_sim, dtype=float)
    gamma_meas = np.asarray(gamma_meas, dtype=float)

    if np.any(gamma_meas <= 0) or np.any(gamma_sim <= 0):
        raise ConfigError(cm.error.dynamics.rescale)

    ratio = gamma_sim / gamma_meas
    df = pd.DataFrame(
        {
            "t": trajectory.t,
            "N_ph_L": trajectory.N_ph_L * ratio[0],
            "N_ph_R": trajectory.N_ph_R * ratio[1],
        }
    )

    N_L, N_R = df.N_ph_L.iloc[-1], df.N_ph_R.iloc[-1]
    df.attrs["eta"] = float((N_L - N_R) / (N_L + N_R))
    df.attrs["ratio"] = tuple(ratio)

    return df
