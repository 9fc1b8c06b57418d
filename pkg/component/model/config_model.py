import configparser
import logging
from pathlib import Path

from traitlets import Bool, Float, Int, List

import component.scripts as scripts
from component.message import cm

from .device_model import (
    CircuitModel,
    CouplingModel,
    LossRatesModel,
    QubitModel,
    TightBindingModel,
)
from .experiment_model import DynamicsModel, EmissionModel, ScenarioModel, SweepModel

__all__ = ["RunConfig", "read_config", "SECTIONS", "STOCHASTIC"]

logger = logging.getLogger(__name__)

SECTIONS = {
    "circuit": CircuitModel,
    "device": TightBindingModel,
    "coupling": CouplingModel,
    "qubit": QubitModel,
    "loss": LossRatesModel,
    "sweep": SweepModel,
    "dynamics": DynamicsModel,
    "emission": EmissionModel,
    "scenario": ScenarioModel,
}

# scenarios drawing random numbers, they need [sweep] seed
STOCHASTIC = ["dissipation-ensemble", "fit-roundtrip", "ac-stark"]

NONE_VALUES = ("", "none")


def _convert(trait, raw, key):
    """cast an INI string to the type of the trait receiving it"""

    raw = raw.strip()
    if trait.allow_none and raw.lower() in NONE_VALUES:
        return None

    try:
        if isinstance(trait, Bool):
            return configparser.ConfigParser.BOOLEAN_STATES[raw.lower()]
        if isinstance(trait, Int):
            return int(raw)
        if isinstance(trait, Float):
            return float(raw)
        if isinstance(trait, List):
            cast = int if isinstance(trait._trait, Int) else float
            return [cast(v) for v in raw.split(",") if v.strip()]
    except (KeyError, ValueError):
        raise scripts.ConfigError(cm.error.config.value.format(key, raw))

    return raw


class RunConfig:
    """Validated configuration of a run, one sepal_ui Model per INI section.

    Exactly one of circuit and device is set, the other is None.
    """

    def __init__(self, sections, source=None):

        self.source = source
        self.circuit = sections.get("circuit")
        self.device = sections.get("device")

        if (self.circuit is None) == (self.device is None):
            raise scripts.ConfigError(cm.error.config.device)

        self.coupling = sections.get("coupling") or CouplingModel()
        self.qubit = sections.get("qubit") or QubitModel()
        self.loss = sections.get("loss") or LossRatesModel()
        self.sweep = sections.get("sweep") or SweepModel()
        self.dynamics = sections.get("dynamics") or DynamicsModel()
        self.emission = sections.get("emission") or EmissionModel()
        self.scenario = sections.get("scenario") or ScenarioModel()

    def tight_binding(self):
        section = self.circuit or self.device
        return section.tight_binding()

    def lattice(self):
        return scripts.LatticeModel(self.tight_binding(), self.coupling.profile())

    def loss_model(self):
        return self.loss.to_params()

    def require(self, scenario):
        """name every key the scenario needs and the configuration lacks"""

        missing = []
        if scenario in STOCHASTIC and self.sweep.seed is None:
            missing.append("sweep.seed")

        if missing:
            raise scripts.ConfigError(cm.error.config.missing.format(", ".join(missing)))

    def export_data(self):

        data = {}
        for name in SECTIONS:
            section = getattr(self, name)
            if section is not None:
                data[name] = section.export_data()

        return data


def _parse_override(text):

    key, sep, value = text.partition("=")
    section, dot, option = key.strip().partition(".")

    if not sep or not dot or not section or not option:
        raise scripts.ConfigError(cm.error.config.override.format(text))

    return section, option, value


def read_config(path=None, overrides=(), seed=None):
    """Load an INI file into a RunConfig.

    Args:
        path (str | pathlib.Path): configuration file, None to start empty
        overrides (list): "section.key=value" strings applied after the file
        seed (int): replaces [sweep] seed when given

    Returns:
        (RunConfig)
    """

    parser = configparser.ConfigParser()
    parser.optionxform = str

    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise scripts.ConfigError(cm.error.config.file.format(path))
        parser.read(path)

    for override in overrides:
        section, option, value = _parse_override(override)
        if not parser.has_section(section):
            parser.add_section(section)
        parser.set(section, option, value)

    if seed is not None:
        if not parser.has_section("sweep"):
            parser.add_section("sweep")
        parser.set("sweep", "seed", str(seed))

    unknown = [s for s in parser.sections() if s not in SECTIONS]
    if unknown:
        raise scripts.ConfigError(cm.error.config.section.format(", ".join(unknown)))

    sections = {}
    for name in parser.sections():
        cls = SECTIONS[name]
        traits = cls.class_traits(sync=True)

        keys = list(parser[name])
        unknown = [f"{name}.{k}" for k in keys if k not in traits]
        if unknown:
            raise scripts.ConfigError(cm.error.config.key.format(", ".join(unknown)))

        values = {k: _convert(traits[k], parser[name][k], f"{name}.{k}") for k in keys}

        section = cls()
        for key, value in values.items():
            setattr(section, key, value)
        sections[name] = section

    logger.debug(cm.log.config.format(path, ", ".join(sections)))

    return RunConfig(sections, source=path)
