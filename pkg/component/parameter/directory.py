from pathlib import Path

__all__ = [
    "base_dir",
    "root_dir",
    "RESULTS_DIR",
    "make_dirs",
]

base_dir = Path("~", "module_results").expanduser()
root_dir = base_dir / "ccaqed"

# every scenario writes in its own subfolder when --out is not given
RESULTS_DIR = root_dir / "results"


def make_dirs():
    """create the default result tree on first use"""

    RESULTS_DIR.mkdir(parents=True, exist_ok=True)

    return RESULTS_DIR
