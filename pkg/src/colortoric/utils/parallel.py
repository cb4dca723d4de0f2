from __future__ import annotations

import logging
from typing import Any, Callable, Dict, List, Sequence

from joblib import Parallel, delayed
from tqdm import tqdm

from .tolerances import Tolerances, set_tolerances

logger = logging.getLogger(__name__)


def _call_with_tolerances(fn: Callable, snapshot: Dict[str, Any], item: Any) -> Any:
    # Worker processes start from the class defaults
    with set_tolerances(**snapshot):
        return fn(item)


def parallel_map(fn: Callable, items: Sequence, workers: int = 1, verbose: bool = False, desc: str = "") -> List[Any]:
    """
    Evaluate `fn` on every item, in order, optionally across a joblib worker pool. The `Tolerances` in effect
    in the caller are re-applied inside every worker task.

    :param workers: number of worker processes; 1 runs in-process
    :type workers: int
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in tqdm(items, desc = desc, disable = not verbose)]

    snapshot = Tolerances.as_dict()
    logger.info(f"Dispatching {len(items)} tasks to {workers} workers.")
    runner = Parallel(n_jobs = workers, return_as = "generator")
    results = runner(delayed(_call_with_tolerances)(fn, snapshot, item) for item in items)

    return list(tqdm(results, total = len(items), desc = desc, disable = not verbose))
