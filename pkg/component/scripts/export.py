import json
import logging
from datetime import datetime
from pathlib import Path

import numpy as np
import pytz

import component.parameter as param
from component.message import cm

__all__ = ["write_csv", "write_manifest", "write_summary"]

logger = logging.getLogger(__name__)


def write_csv(df, path, units):
    """Write a table with a leading '# units:' comment line.

    Floats use param.FLOAT_FORMAT so that identical inputs give identical
    files.

    Args:
        df (pd.DataFrame): table to export
        path (pathlib.Path): destination file
        units (dict): column -> unit, missing columns are dimensionless ("1")
    """

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    header = ", ".join(f"{c} [{units.get(c, '1')}]" for c in df.columns)
    with path.open("w", newline="") as f:
        f.write(f"# units: {header}\n")
        df.to_csv(f, index=False, float_format=param.FLOAT_FORMAT)

    logger.info(cm.log.written.format(path))

    return path


def _default(obj):
    """json fallback for numpy values and paths"""

    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Path):
        return str(obj)

    return str(obj)


def write_manifest(path, scenario, parameters, results=None, warnings=None):
    """Write the JSON manifest of a run, the only file carrying a timestamp"""

    now = datetime.now(tz=pytz.timezone("UTC"))
    manifest = {
        "scenario": scenario,
        "timestamp": now.isoformat(),
        "parameters": parameters,
        "results": results or {},
        "warnings": list(warnings or []),
    }

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, default=_default))
    logger.info(cm.log.written.format(path))

    return manifest


def write_summary(path, lines):
    """human readable recap of a run"""

    path = Path(path)
    path.write_text("\n".join(lines) + "\n")

    return path
