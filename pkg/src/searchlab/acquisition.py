"""PI, EI, and UCB acquisition functions.

Each maps a surrogate posterior (mu, sigma) and the incumbent best score to
a scalar desirability; the argmax over the search space is the proposed next
query. Inputs must share one unit system per surrogate (standardized units
for the GP, raw score units for the RF); the incumbent is always transformed
with the same map as the mean, which leaves each argmax unchanged.

Conventions at sigma = 0 (pure exploitation limit):
PI = 1 if mu > incumbent + xi else 0, and EI = max(mu - incumbent - xi, 0).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import ConfigurationError, ParseError

KINDS = ("PI", "EI", "UCB")


@dataclass(frozen=True)
class AcquisitionSpec:
    """One of PI/EI/UCB with its trade-off parameter."""

    kind: str
    xi: float = 0.0  # improvement margin for PI/EI
    beta: float = 0.0  # exploration weight for UCB

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown acquisition {self.kind!r}; expected one of {KINDS}")
        if self.xi < 0 or self.beta < 0:
            raise ConfigurationError(f"xi and beta must be nonnegative, got xi={self.xi}, beta={self.beta}")


@dataclass(frozen=True)
class Posterior:
    """Surrogate prediction at one point."""

    mean: float
    sigma: float


@dataclass(frozen=True)
class Incumbent:
    """Best observed score so far, in the same units as the posterior mean."""

    y_plus: float


def acq_values(spec: AcquisitionSpec, mu: np.ndarray, sigma: np.ndarray, y_plus: float) -> np.ndarray:
    """Vectorized acquisition over arrays of posterior means/sigmas."""
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if spec.kind == "UCB":
        return mu + spec.beta * sigma
    diff = mu - y_plus - spec.xi
    # z may overflow to +-inf for subnormal sigma; cdf/pdf limits stay exact
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z = np.where(sigma > 0, diff / np.where(sigma > 0, sigma, 1.0), 0.0)
        if spec.kind == "PI":
            return np.where(sigma > 0, norm.cdf(z), (diff > 0).astype(float))
        ei = diff * norm.cdf(z) + sigma * norm.pdf(z)
    return np.where(sigma > 0, ei, np.maximum(diff, 0.0))


def acq_value(spec: AcquisitionSpec, post: Posterior, inc: Incumbent) -> float:
    """Scalar acquisition at a single posterior."""
    return float(acq_values(spec, np.array([post.mean]), np.array([post.sigma]), inc.y_plus)[0])


def lcb_value(post: Posterior, xi: float) -> float:
    """mu - xi*sigma; the minimization counterpart of UCB (unused by the game)."""
    return post.mean - xi * post.sigma


def format_acquisition(spec: AcquisitionSpec) -> str:
    """'EI', 'PI', or 'UCB(beta=0.5)'."""
    if spec.kind == "UCB":
        return f"UCB(beta={spec.beta:g})"
    if spec.xi:
        return f"{spec.kind}(xi={spec.xi:g})"
    return spec.kind


_UCB_RE = re.compile(r"^UCB\(beta=([^)]+)\)$")
_XI_RE = re.compile(r"^(PI|EI)\(xi=([^)]+)\)$")


def parse_acquisition(s: str) -> AcquisitionSpec:
    """Inverse of `format_acquisition`; bare 'UCB' means beta = 0."""
    s = s.strip()
    if s in ("PI", "EI"):
        return AcquisitionSpec(s)
    if s == "UCB":
        return AcquisitionSpec("UCB", beta=0.0)
    m = _UCB_RE.match(s)
    if m:
        try:
            return AcquisitionSpec("UCB", beta=float(m.group(1)))
        except ValueError as exc:
            raise ParseError(f"bad acquisition record {s!r}: {exc}") from exc
    m = _XI_RE.match(s)
    if m:
        try:
            return AcquisitionSpec(m.group(1), xi=float(m.group(2)))
        except ValueError as exc:
            raise ParseError(f"bad acquisition record {s!r}: {exc}") from exc
    raise ParseError(f"bad acquisition record {s!r}")
