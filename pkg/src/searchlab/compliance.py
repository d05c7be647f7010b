"""Classify a trace's search strategy by replaying it against surrogates.

For every iteration with enough history, the analyzer refits the surrogate
on the observations so far, asks each candidate acquisition function for its
proposed next point, and measures the Euclidean distance between each
proposal and the point actually chosen next in the trace. An iteration is
compliant when the smallest such distance is at or below the threshold, and
is then labeled with the closest acquisition. A whole trace is labeled with
its most frequent non-empty iteration label, or NON_COMPLIANT when every
iteration missed the threshold.

Determinism: the focus-search seed for a proposal is derived from
(config seed, trace id, iteration, acquisition identity), never from the
threshold, so relabeling the same distances under a different threshold is
exact and monotone.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .acqopt import FocusSearchParams
from .acquisition import AcquisitionSpec
from .boloop import GPSpec, RFSpec, SurrogateSpec, Trace, fit_surrogate, propose
from .errors import ConfigurationError, NumericalError, UsageError
from .rf import RFParams
from .seeding import derive_seed

NON_COMPLIANT = "NON_COMPLIANT"
NO_LABEL = "NONE"

# fixed priority for exact distance ties between acquisitions
_TIE_ORDER = {"EI": 0, "PI": 1, "UCB": 2}

DEFAULT_ACQUISITIONS = (
    AcquisitionSpec("EI"),
    AcquisitionSpec("PI"),
    AcquisitionSpec("UCB", beta=1.0),
)


@dataclass(frozen=True)
class ComplianceConfig:
    threshold: float = 0.10
    acquisitions: tuple[AcquisitionSpec, ...] = DEFAULT_ACQUISITIONS
    kernel_family: str | None = "se"  # None selects the RF path
    noise: float = 1e-6
    power: float = 1.5
    min_fit_size: int = 3  # first iteration at which a surrogate is fit
    focus: FocusSearchParams = field(default_factory=FocusSearchParams)
    rf_params: RFParams = field(default_factory=RFParams)
    seed: int = 0

    def __post_init__(self):
        if self.threshold <= 0:
            raise ConfigurationError(f"threshold must be positive, got {self.threshold}")
        if not self.acquisitions:
            raise ConfigurationError("need at least one candidate acquisition")
        if self.min_fit_size < 1:
            raise ConfigurationError(f"min_fit_size must be >= 1, got {self.min_fit_size}")


@dataclass(frozen=True)
class IterationVerdict:
    """Distances and pointwise label for predicting observation `n`."""

    n: int  # 1-based index of the trace point being predicted
    distances: dict[str, float]  # acquisition kind -> ||proposal - actual||
    label: str  # winning kind, or NO_LABEL
    failed: bool = False  # surrogate fit failed at this iteration


@dataclass(frozen=True)
class ComplianceRecord:
    trace_id: str
    surrogate: str  # "gp:<family>" or "rf"
    threshold: float
    verdicts: tuple[IterationVerdict, ...]
    strategy: str  # acquisition kind or NON_COMPLIANT
    compliant_fraction: float


def _label_from_distances(distances: dict[str, float], threshold: float) -> str:
    if not distances:
        return NO_LABEL
    best = min(distances.items(), key=lambda kv: (kv[1], _TIE_ORDER.get(kv[0], 99)))
    return best[0] if best[1] <= threshold else NO_LABEL


def _strategy(verdicts: Sequence[IterationVerdict]) -> tuple[str, float]:
    labels = [v.label for v in verdicts if v.label != NO_LABEL]
    scored = len(verdicts)
    fraction = len(labels) / scored if scored else 0.0
    if not labels:
        return NON_COMPLIANT, fraction
    counts = Counter(labels)
    top = max(counts.values())

    def mean_distance(kind: str) -> float:
        ds = [v.distances[kind] for v in verdicts if kind in v.distances]
        return float(np.mean(ds)) if ds else np.inf

    winners = [k for k, c in counts.items() if c == top]
    winners.sort(key=lambda k: (mean_distance(k), _TIE_ORDER.get(k, 99)))
    return winners[0], fraction


def _analyze(trace: Trace, cfg: ComplianceConfig, spec: SurrogateSpec, surrogate_name: str) -> ComplianceRecord:
    n_obs = len(trace)
    if n_obs < cfg.min_fit_size + 1:
        raise UsageError(
            f"trace has {n_obs} observations; need at least min_fit_size + 1 = {cfg.min_fit_size + 1}"
        )
    X = trace.points()
    y = trace.scores()
    verdicts = []
    for n in range(cfg.min_fit_size, n_obs):
        actual_next = X[n]
        try:
            fit = fit_surrogate(
                spec, X[:n], y[:n], seed=derive_seed(cfg.seed, trace.trace_id, "rf-fit", n)
            )
        except NumericalError:
            verdicts.append(IterationVerdict(n=n + 1, distances={}, label=NO_LABEL, failed=True))
            continue
        distances: dict[str, float] = {}
        for acq in cfg.acquisitions:
            focus = replace(
                cfg.focus,
                seed=derive_seed(cfg.seed, trace.trace_id, n, acq.kind, acq.xi, acq.beta),
            )
            proposal = propose(fit, acq, focus)
            distances[acq.kind] = float(np.linalg.norm(proposal - actual_next))
        verdicts.append(
            IterationVerdict(n=n + 1, distances=distances, label=_label_from_distances(distances, cfg.threshold))
        )
    strategy, fraction = _strategy(verdicts)
    return ComplianceRecord(
        trace_id=trace.trace_id,
        surrogate=surrogate_name,
        threshold=cfg.threshold,
        verdicts=tuple(verdicts),
        strategy=strategy,
        compliant_fraction=fraction,
    )


def analyze_trace_gp(trace: Trace, cfg: ComplianceConfig) -> ComplianceRecord:
    """GP path: refit (MLE lengthscale) at every iteration under cfg's kernel."""
    if cfg.kernel_family is None:
        raise ConfigurationError("GP analysis requires a kernel family in the config")
    spec = GPSpec(kernel_family=cfg.kernel_family, noise=cfg.noise, power=cfg.power)
    return _analyze(trace, cfg, spec, surrogate_name=f"gp-{cfg.kernel_family}")


def analyze_trace_rf(trace: Trace, cfg: ComplianceConfig) -> ComplianceRecord:
    """RF path: one forest per iteration, seeded from the trace identity."""
    spec = RFSpec(params=cfg.rf_params)
    return _analyze(trace, cfg, spec, surrogate_name="rf")


def relabel(record: ComplianceRecord, threshold: float) -> ComplianceRecord:
    """Re-derive labels/strategy from stored distances under a new threshold.

    Exact because proposals (hence distances) never depend on the threshold.
    """
    if threshold <= 0:
        raise ConfigurationError(f"threshold must be positive, got {threshold}")
    verdicts = tuple(
        replace(v, label=NO_LABEL if v.failed else _label_from_distances(v.distances, threshold))
        for v in record.verdicts
    )
    strategy, fraction = _strategy(verdicts)
    return replace(
        record, threshold=threshold, verdicts=verdicts, strategy=strategy, compliant_fraction=fraction
    )


def aggregate(records: Iterable[ComplianceRecord]) -> dict[str, dict[str, int]]:
    """Per-surrogate strategy counts: {surrogate: {PI, EI, UCB, NON_COMPLIANT}}."""
    table: dict[str, dict[str, int]] = {}
    for rec in records:
        row = table.setdefault(
            rec.surrogate, {"PI": 0, "EI": 0, "UCB": 0, NON_COMPLIANT: 0}
        )
        row[rec.strategy] = row.get(rec.strategy, 0) + 1
    return table
