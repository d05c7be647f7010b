"""Covariance functions and Gram-matrix construction for the GP surrogate.

All five families are correlation functions (unit variance, k(x,x) = 1) of
the Euclidean distance r = ||x - x'|| on normalized coordinates, with a
single isotropic lengthscale:

* squared exponential      exp(-r^2 / (2 l^2))
* exponential              exp(-r / l)
* power exponential        exp(-(r / l)^p),  p in (0, 2]
* Matern nu=3/2            (1 + sqrt(3) r/l) exp(-sqrt(3) r/l)
* Matern nu=5/2            (1 + sqrt(5) r/l + 5 r^2/(3 l^2)) exp(-sqrt(5) r/l)

The Matern closed forms above are the nu in {3/2, 5/2} specializations of
the general Gamma/Bessel expression; the general form is exercised only by
the oracle tests. Targets are standardized by the GP module instead of
carrying a signal-variance hyperparameter here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .errors import ConfigurationError, ParseError

FAMILIES = ("se", "exp", "powexp", "matern32", "matern52")


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus hyperparameters; `power` is read by powexp only."""

    family: str
    lengthscale: float
    power: float = 1.5

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(
                f"unknown kernel family {self.family!r}; expected one of {FAMILIES}"
            )
        if not (np.isfinite(self.lengthscale) and self.lengthscale > 0):
            raise ConfigurationError(f"lengthscale must be positive, got {self.lengthscale}")
        if self.family == "powexp" and not (0 < self.power <= 2):
            raise ConfigurationError(f"powexp power must be in (0, 2], got {self.power}")


def corr(k: KernelSpec, r: np.ndarray) -> np.ndarray:
    """Correlation at Euclidean distance(s) r >= 0, vectorized."""
    r = np.asarray(r, dtype=float)
    ell = k.lengthscale
    if k.family == "se":
        return np.exp(-(r**2) / (2 * ell**2))
    if k.family == "exp":
        return np.exp(-r / ell)
    if k.family == "powexp":
        return np.exp(-((r / ell) ** k.power))
    if k.family == "matern32":
        s = math.sqrt(3.0) * r / ell
        return (1 + s) * np.exp(-s)
    s = math.sqrt(5.0) * r / ell
    return (1 + s + s**2 / 3) * np.exp(-s)


def kernel_eval(k: KernelSpec, x: Sequence[float], x2: Sequence[float]) -> float:
    """k(x, x') for two points."""
    d = float(np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(x2, dtype=float)))
    return float(corr(k, d))


def cross_corr(k: KernelSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Correlation matrix k(A, B) for point arrays of shape (m,2) and (n,2)."""
    return corr(k, cdist(np.atleast_2d(A), np.atleast_2d(B)))


def gram(k: KernelSpec, X: np.ndarray, jitter: float = 0.0) -> np.ndarray:
    """K(X, X) + jitter * I; symmetric with diagonal 1 + jitter."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[0] == 0:
        raise ConfigurationError("gram requires at least one point")
    if jitter < 0:
        raise ConfigurationError(f"jitter must be nonnegative, got {jitter}")
    K = cross_corr(k, X, X)
    np.fill_diagonal(K, 1.0 + jitter)
    return K


def format_kernel(k: KernelSpec) -> str:
    """Text record used in run configs, e.g. 'se:0.2' or 'powexp:0.2:1.5'."""
    if k.family == "powexp":
        return f"{k.family}:{k.lengthscale:g}:{k.power:g}"
    return f"{k.family}:{k.lengthscale:g}"


def parse_kernel(s: str) -> KernelSpec:
    """Inverse of `format_kernel`."""
    parts = s.strip().split(":")
    try:
        if len(parts) == 2:
            return KernelSpec(parts[0], float(parts[1]))
        if len(parts) == 3:
            return KernelSpec(parts[0], float(parts[1]), float(parts[2]))
    except ConfigurationError:
        raise
    except ValueError as exc:
        raise ParseError(f"bad kernel record {s!r}: {exc}") from exc
    raise ParseError(f"bad kernel record {s!r}")
