"""solutions.py: Filtering and clustering of candidate minimisers."""
import logging
from typing import Iterable, List, NamedTuple, Sequence

import numpy as np

logger = logging.getLogger(__name__)


class Candidate(NamedTuple):
    point: np.ndarray
    value: float


def assemble_solution_set(pool: Sequence[Candidate], filter_tol: float) -> List[Candidate]:
    """Keeps the candidates whose value is within ``filter_tol`` of the smallest value in ``pool``, in pool order."""
    if not pool:
        return []
    best = min(candidate.value for candidate in pool)
    return [candidate for candidate in pool if candidate.value <= best + filter_tol]


def cluster_solutions(candidates: Iterable[Candidate], delta: float) -> List[Candidate]:
    """Greedy clustering in ascending value order; a candidate opens a new cluster unless a representative lies within Euclidean distance ``delta``.

    Returns:
        List[Candidate]: One representative per cluster, the lowest-valued member, in ascending value order.
    """
    ordered = sorted(candidates, key=lambda candidate: candidate.value)
    representatives: List[Candidate] = []
    centres = np.empty((0, 0))
    for candidate in ordered:
        point = np.asarray(candidate.point, dtype=float)
        if representatives and float(np.min(np.linalg.norm(centres - point, axis=1))) <= delta:
            continue
        representatives.append(candidate)
        centres = point[np.newaxis, :] if centres.size == 0 else np.vstack([centres, point])
    logger.debug(f"Clustered {len(ordered)} candidates into {len(representatives)} clusters (delta={delta})")
    return representatives
