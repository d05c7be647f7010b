"""Catalog of 15 deterministic 2D benchmark functions used as game stimuli.

Every function is exposed on the normalized unit square [0, 1]^2 with scores
on a common [0, 100] scale, oriented for maximization (classic minimization
benchmarks are negated) and with the global maximum pinned at exactly 100.

The affine score map for each function is anchored by two frozen constants:

* ``raw_hi`` -- the negated objective evaluated at the known optimizer
  (high-precision locations, polished offline with a dense-grid search plus
  local refinement), so ``evaluate(fn, known_argmax) == 100`` exactly;
* ``raw_lo`` -- the worst negated objective over the canonical 501x501
  evaluation lattice, computed once by ``tools/grid_oracle.py`` and frozen
  below, so lattice scores span the full scale down to 0.

Off-lattice points may fall marginally outside the anchors; scores are
clamped to [0, 100]. The full catalog (native domains, optimizer locations,
anchors) is exported to ``docs/function_catalog.md``.

The set of 15 (Branin, Rosenbrock, Ackley, Rastrigin, Himmelblau, Six-Hump
Camel, Goldstein-Price, Levy, Schwefel, Griewank, Beale, Booth, Matyas,
Styblinski-Tang, Easom) is a stand-in: it covers smooth, multimodal, flat,
and needle-in-haystack regimes among standard 2D global-optimization
benchmarks, but any concrete 15-function choice is necessarily a convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DomainError

LATTICE_SIZE = 501  # per-axis resolution of the normalization lattice


@dataclass(frozen=True)
class FunctionId:
    """Dense index plus human-readable label of one benchmark function."""

    id: int
    name: str


@dataclass(frozen=True)
class TestFunction:
    """One catalog entry with its normalization anchors resolved."""

    id: FunctionId
    native_domain: tuple[tuple[float, float], tuple[float, float]]
    known_argmax: np.ndarray  # normalized coordinates in [0,1]^2
    known_max: float  # always 100.0 under the score map


# --- native objective definitions (minimization orientation) ---------------


def _branin(x1, x2):
    a, b, c = 1.0, 5.1 / (4 * np.pi**2), 5 / np.pi
    return a * (x2 - b * x1**2 + c * x1 - 6.0) ** 2 + 10 * (1 - 1 / (8 * np.pi)) * np.cos(x1) + 10


def _rosenbrock(x1, x2):
    return 100.0 * (x2 - x1**2) ** 2 + (1 - x1) ** 2


def _ackley(x1, x2):
    s = 0.5 * (x1**2 + x2**2)
    c = 0.5 * (np.cos(2 * np.pi * x1) + np.cos(2 * np.pi * x2))
    return -20 * np.exp(-0.2 * np.sqrt(s)) - np.exp(c) + 20 + np.e


def _rastrigin(x1, x2):
    return 20 + x1**2 - 10 * np.cos(2 * np.pi * x1) + x2**2 - 10 * np.cos(2 * np.pi * x2)


def _himmelblau(x1, x2):
    return (x1**2 + x2 - 11) ** 2 + (x1 + x2**2 - 7) ** 2


def _six_hump_camel(x1, x2):
    return (4 - 2.1 * x1**2 + x1**4 / 3) * x1**2 + x1 * x2 + (-4 + 4 * x2**2) * x2**2


def _goldstein_price(x1, x2):
    t1 = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1**2 - 14 * x2 + 6 * x1 * x2 + 3 * x2**2)
    t2 = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1**2 + 48 * x2 - 36 * x1 * x2 + 27 * x2**2)
    return t1 * t2


def _levy(x1, x2):
    w1 = 1 + (x1 - 1) / 4
    w2 = 1 + (x2 - 1) / 4
    return (
        np.sin(np.pi * w1) ** 2
        + (w1 - 1) ** 2 * (1 + 10 * np.sin(np.pi * w1 + 1) ** 2)
        + (w2 - 1) ** 2 * (1 + np.sin(2 * np.pi * w2) ** 2)
    )


def _schwefel(x1, x2):
    return 2 * 418.9829 - (
        x1 * np.sin(np.sqrt(np.abs(x1))) + x2 * np.sin(np.sqrt(np.abs(x2)))
    )


def _griewank(x1, x2):
    return (x1**2 + x2**2) / 4000.0 - np.cos(x1) * np.cos(x2 / np.sqrt(2.0)) + 1


def _beale(x1, x2):
    return (
        (1.5 - x1 + x1 * x2) ** 2
        + (2.25 - x1 + x1 * x2**2) ** 2
        + (2.625 - x1 + x1 * x2**3) ** 2
    )


def _booth(x1, x2):
    return (x1 + 2 * x2 - 7) ** 2 + (2 * x1 + x2 - 5) ** 2


def _matyas(x1, x2):
    return 0.26 * (x1**2 + x2**2) - 0.48 * x1 * x2


def _styblinski_tang(x1, x2):
    return 0.5 * ((x1**4 - 16 * x1**2 + 5 * x1) + (x2**4 - 16 * x2**2 + 5 * x2))


def _easom(x1, x2):
    return -np.cos(x1) * np.cos(x2) * np.exp(-((x1 - np.pi) ** 2 + (x2 - np.pi) ** 2))


@dataclass(frozen=True)
class _Entry:
    name: str
    objective: Callable  # native minimization objective, vectorized
    domain: tuple[tuple[float, float], tuple[float, float]]
    argmin_native: tuple[float, float]
    raw_lo: float  # min of the negated objective over the 501x501 lattice


_SCHWEFEL_XSTAR = 420.968746359982
_STYB_XSTAR = -2.903534027771177

# raw_lo values frozen from tools/grid_oracle.py (rerun it to re-derive).
_CATALOG: tuple[_Entry, ...] = (
    _Entry("branin", _branin, ((-5.0, 10.0), (0.0, 15.0)), (math.pi, 2.275), -308.12909601160663),
    _Entry("rosenbrock", _rosenbrock, ((-2.048, 2.048), (-2.048, 2.048)), (1.0, 1.0), -3905.9262268415996),
    _Entry("ackley", _ackley, ((-32.768, 32.768), (-32.768, 32.768)), (0.0, 0.0), -22.320119721367472),
    _Entry("rastrigin", _rastrigin, ((-5.12, 5.12), (-5.12, 5.12)), (0.0, 0.0), -80.70288171693227),
    _Entry("himmelblau", _himmelblau, ((-5.0, 5.0), (-5.0, 5.0)), (3.0, 2.0), -890.0),
    _Entry(
        "six_hump_camel",
        _six_hump_camel,
        ((-3.0, 3.0), (-2.0, 2.0)),
        (0.08984201310031806, -0.7126564030207396),
        -162.89999999999998,
    ),
    _Entry("goldstein_price", _goldstein_price, ((-2.0, 2.0), (-2.0, 2.0)), (0.0, -1.0), -1015688.7697134637),
    _Entry("levy", _levy, ((-10.0, 10.0), (-10.0, 10.0)), (1.0, 1.0), -95.38280895184609),
    _Entry(
        "schwefel",
        _schwefel,
        ((-500.0, 500.0), (-500.0, 500.0)),
        (_SCHWEFEL_XSTAR, _SCHWEFEL_XSTAR),
        -1675.6948352197082,
    ),
    _Entry("griewank", _griewank, ((-600.0, 600.0), (-600.0, 600.0)), (0.0, 0.0), -181.03945737445824),
    _Entry("beale", _beale, ((-4.5, 4.5), (-4.5, 4.5)), (3.0, 0.5), -181853.61328125),
    _Entry("booth", _booth, ((-10.0, 10.0), (-10.0, 10.0)), (1.0, 3.0), -2594.0),
    _Entry("matyas", _matyas, ((-10.0, 10.0), (-10.0, 10.0)), (0.0, 0.0), -100.0),
    _Entry(
        "styblinski_tang",
        _styblinski_tang,
        ((-5.0, 5.0), (-5.0, 5.0)),
        (_STYB_XSTAR, _STYB_XSTAR),
        -250.0,
    ),
    _Entry("easom", _easom, ((-10.0, 10.0), (-10.0, 10.0)), (math.pi, math.pi), -0.008983844525585085),
)

N_FUNCTIONS = len(_CATALOG)

FnLike = Union[int, FunctionId]


def _entry(fn: FnLike) -> tuple[int, _Entry]:
    idx = fn.id if isinstance(fn, FunctionId) else int(fn)
    if not 0 <= idx < N_FUNCTIONS:
        raise DomainError(f"function id must be in 0..{N_FUNCTIONS - 1}, got {idx}")
    return idx, _CATALOG[idx]


def _raw_hi(e: _Entry) -> float:
    return -float(e.objective(e.argmin_native[0], e.argmin_native[1]))


def _to_native(e: _Entry, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    (lo1, hi1), (lo2, hi2) = e.domain
    return lo1 + pts[..., 0] * (hi1 - lo1), lo2 + pts[..., 1] * (hi2 - lo2)


def _from_native(e: _Entry, x_native: Sequence[float]) -> np.ndarray:
    (lo1, hi1), (lo2, hi2) = e.domain
    return np.array(
        [(x_native[0] - lo1) / (hi1 - lo1), (x_native[1] - lo2) / (hi2 - lo2)]
    )


def list_functions() -> tuple[FunctionId, ...]:
    """All 15 stimuli in fixed catalog order (ids 0..14)."""
    return tuple(FunctionId(i, e.name) for i, e in enumerate(_CATALOG))


def get_function(fn: FnLike) -> TestFunction:
    """Resolve a catalog entry with its normalization applied."""
    idx, e = _entry(fn)
    return TestFunction(
        id=FunctionId(idx, e.name),
        native_domain=e.domain,
        known_argmax=_from_native(e, e.argmin_native),
        known_max=100.0,
    )


def evaluate_many(fn: FnLike, pts: np.ndarray) -> np.ndarray:
    """Normalized scores for an array of points with shape (..., 2) in [0,1]^2."""
    _, e = _entry(fn)
    pts = np.asarray(pts, dtype=float)
    if pts.shape[-1] != 2:
        raise DomainError(f"points must have trailing dimension 2, got shape {pts.shape}")
    if np.any(pts < 0.0) or np.any(pts > 1.0):
        raise DomainError("point outside the unit square [0,1]^2")
    x1, x2 = _to_native(e, pts)
    raw = -e.objective(x1, x2)
    hi = _raw_hi(e)
    score = 100.0 * (raw - e.raw_lo) / (hi - e.raw_lo)
    return np.clip(score, 0.0, 100.0)


def evaluate(fn: FnLike, p: Sequence[float]) -> float:
    """Normalized score in [0,100] at a single point p in [0,1]^2."""
    return float(evaluate_many(fn, np.asarray(p, dtype=float)))


def optimum(fn: FnLike) -> tuple[np.ndarray, float]:
    """Known (argmax in normalized coordinates, max score) of the function."""
    t = get_function(fn)
    return t.known_argmax, t.known_max


def catalog_rows() -> list[dict]:
    """Catalog table (id, name, domain, anchors) for the repo docs."""
    rows = []
    for i, e in enumerate(_CATALOG):
        rows.append(
            {
                "id": i,
                "name": e.name,
                "native_domain": e.domain,
                "argmax_native": e.argmin_native,
                "argmax_normalized": tuple(_from_native(e, e.argmin_native)),
                "raw_hi": _raw_hi(e),
                "raw_lo": e.raw_lo,
            }
        )
    return rows
