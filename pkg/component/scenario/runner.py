import logging
import warnings
from pathlib import Path

import component.parameter as param
import component.scripts as scripts
from component.message import cm

from .budget import run_ac_stark, run_purcell
from .chirality import run_chirality_map
from .dissipation import run_dissipation_ensemble, run_fit_roundtrip
from .emission import run_emission
from .quench import run_superstrong_dynamics
from .spectrum import run_participation, run_spectrum

__all__ = ["RUNNERS", "run_scenario"]

logger = logging.getLogger(__name__)

RUNNERS = {
    "spectrum": run_spectrum,
    "participation": run_participation,
    "superstrong-dynamics": run_superstrong_dynamics,
    "chirality-map": run_chirality_map,
    "dissipation-ensemble": run_dissipation_ensemble,
    "emission": run_emission,
    "purcell": run_purcell,
    "ac-stark": run_ac_stark,
    "fit-roundtrip": run_fit_roundtrip,
}


def run_scenario(config, name=None, out=None, workers=None):
    """Run one named experiment and write its artifact bundle.

    CSV files, manifest.json (resolved parameters, seeds, results, physics
    warnings and the timestamp) and summary.txt land in out, by default a
    subfolder of param.RESULTS_DIR named after the scenario.

    Args:
        config (RunConfig): validated configuration
        name (str): scenario, [scenario] name when omitted
        out (str | pathlib.Path): output directory
        workers (int): pool size, CCAQED_WORKERS or 1 when omitted

    Returns:
        (Outcome)
    """

    name = name or config.scenario.name
    if name not in RUNNERS:
        raise scripts.ConfigError(cm.error.config.scenario.format(name))

    config.require(name)
    workers = scripts.resolve_workers(workers)
    out = Path(out) if out is not None else param.make_dirs() / name
    out.mkdir(parents=True, exist_ok=True)

    logger.info(cm.log.scenario.format(name, out, workers))

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        outcome = RUNNERS[name](config, out, workers)

    messages = list(dict.fromkeys(str(w.message) for w in caught))
    parameters = config.export_data()

    scripts.write_manifest(
        out / "manifest.json",
        name,
        parameters,
        outcome.results,
        messages,
    )

    lines = [cm.summary.header.format(name)]
    lines += [cm.summary.line.format(k, v) for k, v in outcome.results.items()]
    lines += [cm.summary.files.format(", ".join(p.name for p in outcome.files))]
    lines += [cm.summary.warning.format(m) for m in messages]
    scripts.write_summary(out / "summary.txt", lines)

    return outcome
