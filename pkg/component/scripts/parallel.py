import os
from concurrent.futures import ThreadPoolExecutor

from tqdm.auto import tqdm

import component.parameter as param

__all__ = ["parallel_map", "resolve_workers", "PROGRESS"]

# switched off by the command line --quiet flag
PROGRESS = {"disable": False}


def resolve_workers(workers=None):
    """Worker count from the explicit value, then CCAQED_WORKERS, then 1"""

    if workers is None:
        workers = int(os.environ.get("CCAQED_WORKERS", 1))

    return max(1, int(workers))


def parallel_map(func, items, workers=1, desc=None):
    """Apply func to every item and return the results in input order.

    Args:
        func (callable): function of a single item
        items (iterable): work units
        workers (int): pool size, 1 runs sequentially
        desc (str): label of the progress bar
    """

    items = list(items)
    kwargs = {
        "total": len(items),
        "desc": desc,
        "bar_format": param.BAR_FORMAT,
        "disable": PROGRESS["disable"] or desc is None,
        "leave": False,
    }

    if workers <= 1:
        return [func(item) for item in tqdm(items, **kwargs)]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(tqdm(executor.map(func, items), **kwargs))
