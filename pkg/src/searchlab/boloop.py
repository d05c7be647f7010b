"""The sequential model-based optimization loop and regret metrics.

Machine runs produce `Trace` objects structurally identical to recorded
human games: an initial Latin-hypercube design followed by iterations of
fit surrogate -> maximize acquisition (focus-search) -> evaluate -> append.

The surrogate adapters here (`fit_surrogate`, `propose`) are shared with the
compliance analyzer so that a trace generated under some acquisition and the
analyzer's re-proposal for the same data go through the very same code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Union

import numpy as np

from . import testfns
from .acqopt import FocusSearchParams, focus_search, latin_hypercube
from .acquisition import AcquisitionSpec, acq_values, format_acquisition
from .errors import SearchLabError, NumericalError, UsageError
from .gp import DEFAULT_LENGTHSCALE, DEFAULT_NOISE, gp_fit, gp_fit_mle
from .kernels import KernelSpec
from .rf import RFParams, rf_fit, rf_predict_many
from .seeding import derive_seed


@dataclass(frozen=True)
class Observation:
    x: np.ndarray  # point in [0,1]^2
    y: float
    index: int  # 1-based position in the trace


@dataclass(frozen=True)
class TraceMeta:
    source: str  # "human" | "machine"
    function_id: int
    mode: int = 1
    budget: int | None = None
    surrogate: str | None = None  # machine traces: "gp-se", "rf", "random"
    acquisition: str | None = None  # machine traces: "EI", "UCB(beta=1)", ...
    seed: int | None = None  # machine traces
    user_id: str | None = None
    end_timestamp: int | None = None  # UTC milliseconds


@dataclass(frozen=True)
class Trace:
    observations: tuple[Observation, ...]
    meta: TraceMeta

    def __len__(self) -> int:
        return len(self.observations)

    @property
    def trace_id(self) -> str:
        return f"{self.meta.user_id}@{self.meta.end_timestamp}"

    def points(self) -> np.ndarray:
        return np.array([o.x for o in self.observations]).reshape(len(self), 2)

    def scores(self) -> np.ndarray:
        return np.array([o.y for o in self.observations])


class PartialTraceError(SearchLabError):
    """Surrogate failure mid-run; `.trace` holds the completed prefix."""

    def __init__(self, message: str, trace: Trace):
        super().__init__(message)
        self.trace = trace


# --- surrogate adapters -----------------------------------------------------


@dataclass(frozen=True)
class GPSpec:
    """GP surrogate policy: MLE lengthscale once enough points exist."""

    kernel_family: str = "se"
    noise: float = DEFAULT_NOISE
    power: float = 1.5
    mle_min_points: int = 3
    default_lengthscale: float = DEFAULT_LENGTHSCALE


@dataclass(frozen=True)
class RFSpec:
    """RF surrogate policy; the fit seed is derived per call."""

    params: RFParams = field(default_factory=RFParams)


SurrogateSpec = Union[GPSpec, RFSpec]


@dataclass(frozen=True)
class SurrogateFit:
    """A fitted posterior in acquisition units plus the matching incumbent."""

    mu_sigma: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    incumbent: float
    label: str


def surrogate_label(spec: SurrogateSpec) -> str:
    return f"gp-{spec.kernel_family}" if isinstance(spec, GPSpec) else "rf"


def fit_surrogate(spec: SurrogateSpec, X: np.ndarray, y: np.ndarray, seed: int = 0) -> SurrogateFit:
    """Fit either surrogate; GP works in standardized units, RF in raw scores."""
    if isinstance(spec, GPSpec):
        if len(y) >= spec.mle_min_points:
            model = gp_fit_mle(X, y, spec.kernel_family, noise=spec.noise, power=spec.power)
        else:
            model = gp_fit(
                X, y, KernelSpec(spec.kernel_family, spec.default_lengthscale, spec.power),
                noise=spec.noise,
            )
        return SurrogateFit(
            mu_sigma=model.posterior,
            incumbent=model.incumbent_standardized(),
            label=surrogate_label(spec),
        )
    params = replace(spec.params, seed=seed)
    model = rf_fit(X, y, params)

    def mu_sigma(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mean, var = rf_predict_many(model, P)
        return mean, np.sqrt(var)

    return SurrogateFit(mu_sigma=mu_sigma, incumbent=float(np.max(y)), label="rf")


def propose(fit: SurrogateFit, acq: AcquisitionSpec, focus: FocusSearchParams) -> np.ndarray:
    """Acquisition argmax under the fitted surrogate, via focus-search."""

    def batch(P: np.ndarray) -> np.ndarray:
        mu, sigma = fit.mu_sigma(P)
        return acq_values(acq, mu, sigma, fit.incumbent)

    return focus_search(batch, focus)


# --- the loop ----------------------------------------------------------------


def _machine_meta(fn_id: int, surrogate: str, acq_label: str, budget: int, seed: int) -> TraceMeta:
    user_id = f"machine:{surrogate}:{acq_label}:{seed}"
    # deterministic pseudo-timestamp so reruns serialize identically
    ts = 1_600_000_000_000 + derive_seed("trace-ts", user_id) % 1_000_000_000
    return TraceMeta(
        source="machine",
        function_id=fn_id,
        mode=1,
        budget=budget,
        surrogate=surrogate,
        acquisition=acq_label,
        seed=seed,
        user_id=user_id,
        end_timestamp=ts,
    )


def run_bo(
    fn: testfns.FnLike,
    surrogate: SurrogateSpec,
    acq: AcquisitionSpec,
    m: int = 5,
    N: int = 20,
    seed: int = 0,
    focus: FocusSearchParams = FocusSearchParams(),
) -> Trace:
    """LHS design of m points, then N acquisition-driven evaluations."""
    if m < 1 or N < 0:
        raise UsageError(f"need m >= 1 and N >= 0, got m={m}, N={N}")
    fn_id = testfns.get_function(fn).id.id
    meta = _machine_meta(fn_id, surrogate_label(surrogate), format_acquisition(acq), m + N, seed)

    design = latin_hypercube(m, seed=derive_seed(seed, "lhs"))
    obs = [
        Observation(x=p.copy(), y=testfns.evaluate(fn, p), index=i + 1)
        for i, p in enumerate(design.points)
    ]
    for _ in range(N):
        n = len(obs)
        X = np.array([o.x for o in obs])
        y = np.array([o.y for o in obs])
        try:
            fit = fit_surrogate(surrogate, X, y, seed=derive_seed(seed, "fit", n))
        except NumericalError as exc:
            raise PartialTraceError(
                f"surrogate failed after {n} observations: {exc}",
                Trace(observations=tuple(obs), meta=meta),
            ) from exc
        x_next = propose(fit, acq, replace(focus, seed=derive_seed(seed, "focus", n)))
        obs.append(Observation(x=x_next, y=testfns.evaluate(fn, x_next), index=n + 1))
    return Trace(observations=tuple(obs), meta=meta)


def run_random_search(fn: testfns.FnLike, n: int, seed: int = 0) -> Trace:
    """Uniform random baseline emitted in the same trace shape."""
    if n < 1:
        raise UsageError(f"need at least one evaluation, got {n}")
    fn_id = testfns.get_function(fn).id.id
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    obs = tuple(
        Observation(x=p.copy(), y=testfns.evaluate(fn, p), index=i + 1)
        for i, p in enumerate(pts)
    )
    return Trace(observations=obs, meta=_machine_meta(fn_id, "random", "RANDOM", n, seed))


# --- regret metrics ----------------------------------------------------------


def best_so_far(t: Trace) -> np.ndarray:
    """Running maximum of the observed scores."""
    if len(t) == 0:
        raise UsageError("empty trace")
    return np.maximum.accumulate(t.scores())


def simple_regret(t: Trace, f_star: float) -> float:
    """Gap between f_star and the best observed score (floored at 0)."""
    if len(t) == 0:
        raise UsageError("empty trace")
    return max(0.0, f_star - float(t.scores().max()))


def cumulative_regret(t: Trace, f_star: float) -> float:
    """Sum over all observations of the gap to f_star."""
    if len(t) == 0:
        raise UsageError("empty trace")
    return float((f_star - t.scores()).sum())
