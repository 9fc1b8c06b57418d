import numpy as np
from sepal_ui import model
from traitlets import Bool, Float, Int, Unicode, validate

import component.parameter as param
import component.scripts as scripts
from component.message import cm

__all__ = ["SweepModel", "DynamicsModel", "EmissionModel", "ScenarioModel"]


def _grid(start, stop, points, name):
    if points < 2 or not stop > start:
        raise scripts.ConfigError(cm.error.config.grid.format(name, start, stop, points))
    return np.linspace(start, stop, points)


class SweepModel(model.Model):
    """[sweep] section: grids, disorder and random draws"""

    omega_q_start = Float(7.0).tag(sync=True)
    "float: first qubit frequency of the sweep (GHz)"

    omega_q_stop = Float(9.0).tag(sync=True)
    "float: last qubit frequency of the sweep (GHz)"

    points = Int(301).tag(sync=True)
    "int: number of sweep points"

    omega_p_start = Float(7.0).tag(sync=True)
    "float: first drive frequency of the transmission map (GHz)"

    omega_p_stop = Float(8.6).tag(sync=True)
    "float: last drive frequency (GHz)"

    omega_p_points = Int(401).tag(sync=True)
    "int: number of drive frequencies"

    sigma = Float(param.DISORDER_SIGMA).tag(sync=True)
    "float: standard deviation of the site disorder (GHz)"

    realizations = Int(5000).tag(sync=True)
    "int: size of the disorder ensemble"

    draws = Int(100).tag(sync=True)
    "int: random parameter draws of the fit round trip"

    noise = Float(0.01).tag(sync=True)
    "float: relative noise added to the synthetic reflection traces"

    seed = Int(None, allow_none=True).tag(sync=True)
    "int: master seed, mandatory for stochastic scenarios"

    @validate("realizations", "draws", "points", "omega_p_points")
    def _valid_counts(self, proposal):
        if proposal["value"] < 1:
            name = proposal["trait"].name
            raise scripts.ConfigError(cm.error.config.positive.format(name, proposal["value"]))
        return proposal["value"]

    def omega_q_grid(self):
        return _grid(self.omega_q_start, self.omega_q_stop, self.points, "omega_q")

    def omega_p_grid(self):
        return _grid(self.omega_p_start, self.omega_p_stop, self.omega_p_points, "omega_p")


class DynamicsModel(model.Model):
    """[dynamics] section: integrator and quench scan"""

    backend = Unicode("nonhermitian").tag(sync=True)
    "str: 'nonhermitian' or 'lindblad'"

    rtol = Float(param.RTOL).tag(sync=True)
    "float: relative tolerance of the integrator"

    atol = Float(param.ATOL).tag(sync=True)
    "float: absolute tolerance of the integrator"

    report_step = Float(param.REPORT_STEP).tag(sync=True)
    "float: reporting step (ns)"

    omega_init = Float(param.PROTOCOL["quench_init"]).tag(sync=True)
    "float: parking frequency of the quench (GHz)"

    ramp_time = Float(param.PROTOCOL["quench_ramp"]).tag(sync=True)
    "float: duration of each quench ramp (ns)"

    ramp_variant = Unicode(None, allow_none=True).tag(sync=True)
    "str: named ramp of param.PROTOCOL['quench_ramps'], replaces ramp_time when set"

    target_start = Float(7.9).tag(sync=True)
    "float: first hold frequency of the quench (GHz)"

    target_stop = Float(8.6).tag(sync=True)
    "float: last hold frequency (GHz)"

    target_points = Int(71).tag(sync=True)
    "int: number of hold frequencies"

    tau_start = Float(param.PROTOCOL["tau_start"]).tag(sync=True)
    "float: first hold duration (ns)"

    tau_stop = Float(param.PROTOCOL["tau_stop"]).tag(sync=True)
    "float: last hold duration (ns)"

    tau_step = Float(param.PROTOCOL["tau_step"]).tag(sync=True)
    "float: hold duration step (ns)"

    @validate("backend")
    def _valid_backend(self, proposal):
        if proposal["value"] not in scripts.BACKENDS:
            raise scripts.ConfigError(cm.error.dynamics.backend.format(proposal["value"]))
        return proposal["value"]

    @validate("ramp_variant")
    def _valid_ramp_variant(self, proposal):
        variants = param.PROTOCOL["quench_ramps"]
        if proposal["value"] is not None and proposal["value"] not in variants:
            raise scripts.ConfigError(
                cm.error.dynamics.ramp_variant.format(proposal["value"], ", ".join(variants))
            )
        return proposal["value"]

    def ramp(self):
        if self.ramp_variant is None:
            return self.ramp_time
        return param.PROTOCOL["quench_ramps"][self.ramp_variant]

    def targets(self):
        return _grid(self.target_start, self.target_stop, self.target_points, "target")

    def taus(self):
        if not self.tau_step > 0 or not self.tau_stop > self.tau_start:
            raise scripts.ConfigError(
                cm.error.config.grid.format("tau", self.tau_start, self.tau_stop, self.tau_step)
            )
        n = int(np.floor((self.tau_stop - self.tau_start) / self.tau_step + 1e-9))
        return self.tau_start + self.tau_step * np.arange(n + 1)

    def solver(self):
        return {
            "backend": self.backend,
            "rtol": self.rtol,
            "atol": self.atol,
            "report_step": self.report_step,
        }


class EmissionModel(model.Model):
    """[emission] section: directional emission protocol"""

    mode = Int(31).tag(sync=True)
    "int: 1-based dressed mode receiving the photon"

    omega_init = Float(param.PROTOCOL["omega_init"]).tag(sync=True)
    "float: qubit frequency during preparation and SWAP (GHz)"

    omega_emit = Float(None, allow_none=True).tag(sync=True)
    "float: emission point (GHz), searched in the window when unset"

    window_start = Float(7.9).tag(sync=True)
    "float: lower bound of the emission point search (GHz)"

    window_stop = Float(8.6).tag(sync=True)
    "float: upper bound of the emission point search (GHz)"

    window_points = Int(141).tag(sync=True)
    "int: points of the emission point search"

    swap_frequency = Float(None, allow_none=True).tag(sync=True)
    "float: modulation frequency (GHz), estimated from the dressed spectrum when unset"

    swap_amplitude = Float(None, allow_none=True).tag(sync=True)
    "float: modulation amplitude (GHz), estimated when unset"

    swap_duration = Float(param.PROTOCOL["swap_duration"]).tag(sync=True)
    "float: SWAP length (ns)"

    envelope = Unicode("supergaussian").tag(sync=True)
    "str: 'rectangular' or 'supergaussian'"

    ramp_duration = Float(param.PROTOCOL["ramp_duration"]).tag(sync=True)
    "float: ramp to the emission point (ns)"

    hold = Float(500.0).tag(sync=True)
    "float: time left for the photon to leak out (ns)"

    prep_delay = Float(0.0).tag(sync=True)
    "float: idle time after the preparation (ns)"

    ideal = Bool(False).tag(sync=True)
    "bool: prepare the bound state at the emission point, no ramp"

    gamma_meas_L = Float(None, allow_none=True).tag(sync=True)
    "float: measured left rate of the mode (GHz), enables the rescaling"

    gamma_meas_R = Float(None, allow_none=True).tag(sync=True)
    "float: measured right rate of the mode (GHz)"

    calibration_points = Int(0).tag(sync=True)
    "int: grid size of the SWAP calibration scan per axis, 0 skips it"

    calibration_span = Float(0.02).tag(sync=True)
    "float: half-width of the scanned modulation frequencies (GHz)"

    @validate("envelope")
    def _valid_envelope(self, proposal):
        if proposal["value"] not in ("rectangular", "supergaussian"):
            raise scripts.ConfigError(cm.error.dynamics.envelope.format(proposal["value"]))
        return proposal["value"]


class ScenarioModel(model.Model):
    """[scenario] section"""

    name = Unicode("spectrum").tag(sync=True)
    "str: experiment to run, one of param.SCENARIOS"

    transmission = Bool(False).tag(sync=True)
    "bool: also export the transmission map in the spectrum scenario"

    modes = Unicode("").tag(sync=True)
    "str: comma separated dressed modes whose profiles are exported"

    @validate("name")
    def _valid_name(self, proposal):
        if proposal["value"] not in param.SCENARIOS:
            raise scripts.ConfigError(cm.error.config.scenario.format(proposal["value"]))
        return proposal["value"]
