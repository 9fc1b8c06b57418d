import math

from sepal_ui import model
from traitlets import Bool, Float, Int, List, Unicode, validate

import component.parameter as param
import component.scripts as scripts
from component.message import cm

__all__ = [
    "CircuitModel",
    "TightBindingModel",
    "QubitModel",
    "CouplingModel",
    "LossRatesModel",
]


def _positive(name, value):
    if not value > 0:
        raise scripts.ConfigError(cm.error.config.positive.format(name, value))
    return value


class CircuitModel(model.Model):
    """[circuit] section: lumped elements of the array, SI units"""

    L_g = Float(param.CIRCUIT["L_g"]).tag(sync=True)
    "float: ground inductance of every resonator (H)"

    C_g = Float(param.CIRCUIT["C_g"]).tag(sync=True)
    "float: ground capacitance of every resonator (F)"

    C_1 = Float(param.CIRCUIT["C_1"]).tag(sync=True)
    "float: intra-cell coupling capacitance (F)"

    C_2 = Float(param.CIRCUIT["C_2"]).tag(sync=True)
    "float: inter-cell coupling capacitance (F)"

    C_p1 = Float(param.CIRCUIT["C_p1"]).tag(sync=True)
    "float: stray capacitance to the second neighbour (F)"

    C_p2 = Float(param.CIRCUIT["C_p2"]).tag(sync=True)
    "float: stray capacitance to the third neighbour (F)"

    C_p3 = Float(param.CIRCUIT["C_p3"]).tag(sync=True)
    "float: stray capacitance to the fourth neighbour (F)"

    N = Int(param.N_CAVITIES).tag(sync=True)
    "int: number of cavities, even"

    uniform = Bool(False).tag(sync=True)
    "bool: same diagonal capacitance on every site instead of row sums"

    def to_params(self):
        return scripts.CircuitParams(
            L_g=self.L_g,
            C_g=self.C_g,
            C_1=self.C_1,
            C_2=self.C_2,
            C_p1=self.C_p1,
            C_p2=self.C_p2,
            C_p3=self.C_p3,
            N=self.N,
        )

    def tight_binding(self):
        return scripts.derive_tight_binding(self.to_params(), self.uniform)


class TightBindingModel(model.Model):
    """[device] section: hopping model given directly, GHz"""

    omega_r = Float(param.TIGHT_BINDING["omega_r"]).tag(sync=True)
    "float: bare cavity frequency"

    J_1 = Float(param.TIGHT_BINDING["J_1"]).tag(sync=True)
    "float: intra-cell hopping"

    J_2 = Float(param.TIGHT_BINDING["J_2"]).tag(sync=True)
    "float: inter-cell hopping"

    J_higher = List(Float(), list(param.TIGHT_BINDING["J_higher"])).tag(sync=True)
    "list: hoppings to the neighbours at distance 2, 3, ..."

    N = Int(param.N_CAVITIES).tag(sync=True)
    "int: number of cavities"

    Z_r = Float(param.TIGHT_BINDING["Z_r"]).tag(sync=True)
    "float: resonator impedance (Ohm), informative only"

    @validate("omega_r")
    def _valid_omega_r(self, proposal):
        return _positive("device.omega_r", proposal["value"])

    @validate("N")
    def _valid_N(self, proposal):
        if proposal["value"] < 2:
            raise scripts.ConfigError(cm.error.lattice.too_short.format(proposal["value"]))
        return proposal["value"]

    def tight_binding(self):
        return scripts.TightBindingParams(
            omega_r=self.omega_r,
            J_1=self.J_1,
            J_2=self.J_2,
            J_higher=tuple(self.J_higher),
            N=self.N,
            Z_r=self.Z_r,
        )


class QubitModel(model.Model):
    """[qubit] section"""

    E_J0 = Float(param.QUBIT["E_J0"]).tag(sync=True)
    "float: maximal Josephson energy (GHz)"

    E_C = Float(param.QUBIT["E_C"]).tag(sync=True)
    "float: charging energy (GHz)"

    flux = Float(0.0).tag(sync=True)
    "float: reduced flux of the SQUID loop"

    omega_q = Float(None, allow_none=True).tag(sync=True)
    "float: qubit frequency (GHz), overrides the flux when set"

    def frequency(self):
        if self.omega_q is not None:
            return self.omega_q
        return scripts.qubit_frequency(scripts.QubitParams(self.E_J0, self.E_C, self.flux))


class CouplingModel(model.Model):
    """[coupling] section: giant-atom coupling points"""

    shape = Unicode("table").tag(sync=True)
    "str: 'table' (sites and rates), 'gaussian' or 'single'"

    sites = List(Int(), list(param.COUPLING)).tag(sync=True)
    "list: 1-based coupling sites of the table shape"

    rates = List(Float(), list(param.COUPLING.values())).tag(sync=True)
    "list: coupling rates of the table shape (GHz)"

    center = Int(23).tag(sync=True)
    "int: central site of the gaussian and single shapes"

    n_sites = Int(7).tag(sync=True)
    "int: number of coupling points of the gaussian shape"

    width = Float(1.5).tag(sync=True)
    "float: gaussian width in sites"

    peak = Float(0.075).tag(sync=True)
    "float: coupling at the center (GHz)"

    @validate("shape")
    def _valid_shape(self, proposal):
        if proposal["value"] not in ("table", "gaussian", "single"):
            raise scripts.ConfigError(cm.error.config.shape.format(proposal["value"]))
        return proposal["value"]

    def profile(self):

        if self.shape == "gaussian":
            return scripts.CouplingProfile.gaussian(
                self.center, self.n_sites, self.width, self.peak
            )
        if self.shape == "single":
            return scripts.CouplingProfile.single_site(self.center, self.peak)

        if len(self.sites) != len(self.rates):
            raise scripts.ConfigError(
                cm.error.config.profile_length.format(len(self.sites), len(self.rates))
            )

        return scripts.CouplingProfile(dict(zip(self.sites, self.rates)))


class LossRatesModel(model.Model):
    """[loss] section, rates in GHz"""

    kappa_int = Float(param.LOSS["kappa_int"]).tag(sync=True)
    "float: internal rate of every cavity"

    kappa_q = Float(param.LOSS["kappa_q"]).tag(sync=True)
    "float: qubit relaxation rate"

    kappa_ext_L = Float(param.LOSS["kappa_ext_L"]).tag(sync=True)
    "float: left port on the first site"

    kappa_ext_R = Float(param.LOSS["kappa_ext_R"]).tag(sync=True)
    "float: right port on the last site"

    kappa_ext_Lp = Float(param.LOSS["kappa_ext_Lp"]).tag(sync=True)
    "float: left port on the second site"

    kappa_ext_Rp = Float(param.LOSS["kappa_ext_Rp"]).tag(sync=True)
    "float: right port on the second to last site"

    cross_factor = Float(2.0).tag(sync=True)
    "float: port cross term in units of sqrt(kappa kappa')"

    T1 = Float(None, allow_none=True).tag(sync=True)
    "float: qubit lifetime (ns), sets kappa_q when given"

    @validate("T1")
    def _valid_T1(self, proposal):
        if proposal["value"] is not None:
            _positive("loss.T1", proposal["value"])
        return proposal["value"]

    def to_params(self):

        kappa_q = self.kappa_q if self.T1 is None else 1 / (2 * math.pi * self.T1)

        return scripts.LossModel(
            kappa_int=self.kappa_int,
            kappa_q=kappa_q,
            kappa_ext_L=self.kappa_ext_L,
            kappa_ext_R=self.kappa_ext_R,
            kappa_ext_Lp=self.kappa_ext_Lp,
            kappa_ext_Rp=self.kappa_ext_Rp,
            cross_factor=self.cross_factor,
        )
