"""Inner optimization of acquisition surfaces, plus space-filling designs.

Focus-search maximizes an arbitrary (possibly piecewise-constant) function on
the unit square by repeated uniform sampling inside a box that shrinks around
the best point found so far, restarted from the full square several times.
It is the single inner optimizer for both surrogate families: random-forest
acquisition surfaces are flat almost everywhere, so gradient refinement is
not relied on (a refinement hook exists for callers that want one).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError

# Batch acquisition: (m, 2) points in [0,1]^2 -> (m,) values.
BatchAcquisition = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FocusSearchParams:
    n_points: int = 1000  # candidates per stage
    n_shrinks: int = 5  # sample/shrink cycles per restart
    n_restarts: int = 3
    shrink_factor: float = 0.5  # per-axis box reduction per cycle
    seed: int = 0

    def __post_init__(self):
        if min(self.n_points, self.n_shrinks, self.n_restarts) < 1:
            raise ConfigurationError("focus-search counts must all be >= 1")
        if not 0 < self.shrink_factor < 1:
            raise ConfigurationError(f"shrink_factor must be in (0,1), got {self.shrink_factor}")


@dataclass(frozen=True)
class Design:
    """A space-filling set of points in [0,1]^2."""

    points: np.ndarray  # (m, 2)


def focus_search(
    acq: BatchAcquisition,
    params: FocusSearchParams = FocusSearchParams(),
    refine: Optional[Callable[[np.ndarray, float], tuple[np.ndarray, float]]] = None,
) -> np.ndarray:
    """Best point found over all restarts and shrink stages.

    Each restart keeps a running best; every stage samples `n_points`
    uniformly in the current box, updates the running best, then halves the
    box around it (clipped to the unit square), so the restart's stage-best
    sequence never decreases.
    """
    point, value = focus_search_with_value(acq, params, refine)
    return point


def focus_search_with_value(
    acq: BatchAcquisition,
    params: FocusSearchParams = FocusSearchParams(),
    refine: Optional[Callable[[np.ndarray, float], tuple[np.ndarray, float]]] = None,
) -> tuple[np.ndarray, float]:
    """As `focus_search`, also returning the achieved acquisition value."""
    best_x: np.ndarray | None = None
    best_v = -np.inf
    for r in range(params.n_restarts):
        # independent per-restart substream: parallel and serial runs agree
        rng = np.random.default_rng([params.seed, r])
        lo = np.zeros(2)
        hi = np.ones(2)
        r_best_x: np.ndarray | None = None
        r_best_v = -np.inf
        for _ in range(params.n_shrinks):
            pts = lo + rng.random((params.n_points, 2)) * (hi - lo)
            vals = np.asarray(acq(pts), dtype=float)
            i = int(np.argmax(vals))
            if vals[i] > r_best_v:
                r_best_v = float(vals[i])
                r_best_x = pts[i]
            half = (hi - lo) * params.shrink_factor / 2
            lo = np.clip(r_best_x - half, 0.0, 1.0)
            hi = np.clip(r_best_x + half, 0.0, 1.0)
        if r_best_v > best_v:
            best_v = r_best_v
            best_x = r_best_x
    if refine is not None:
        cand, cand_v = refine(best_x.copy(), best_v)
        cand = np.clip(np.asarray(cand, dtype=float), 0.0, 1.0)
        if cand_v > best_v:
            best_x, best_v = cand, float(cand_v)
    return best_x.copy(), best_v


def latin_hypercube(m: int, seed: int = 0) -> Design:
    """m points with exactly one coordinate per axis-aligned m-th bin."""
    if m < 1:
        raise ConfigurationError(f"design size must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    pts = np.empty((m, 2))
    for axis in range(2):
        pts[:, axis] = (rng.permutation(m) + rng.random(m)) / m
    return Design(points=pts)
