"""Gaussian-process regression with standardized targets.

Targets are shifted/scaled to zero mean and unit spread before fitting (zero
prior mean in standardized units); predicted means are mapped back to score
units on output while predicted variances stay in standardized units, so far
from all data the posterior recovers (training mean, variance 1).

The lengthscale is selected by maximizing the log marginal likelihood over a
fixed log-spaced grid; 2D games rarely exceed a few dozen observations, so
an exhaustive grid is both robust and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import NumericalError, UsageError
from .kernels import KernelSpec, cross_corr, gram

DEFAULT_NOISE = 1e-6  # standardized units; scores are deterministic
DEFAULT_LENGTHSCALE = 0.2
# 0.01 to 10 in eighth-of-a-decade steps
LENGTHSCALE_GRID = tuple(0.01 * 10 ** (k / 8) for k in range(25))
_JITTERS = (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6)


@dataclass(frozen=True)
class GPModel:
    """Immutable fitted model; safe to share across threads."""

    X: np.ndarray  # (n, 2) training points
    y: np.ndarray  # (n,) raw scores
    kernel: KernelSpec
    noise: float
    y_mean: float
    y_scale: float
    chol: np.ndarray  # lower-triangular factor of K + noise*I (+ jitter)
    alpha: np.ndarray  # (K + noise*I)^{-1} y_std

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def incumbent_standardized(self) -> float:
        """Best observed score mapped into standardized target units."""
        return (float(self.y.max()) - self.y_mean) / self.y_scale

    def posterior(self, P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Standardized (mean, sigma) at points P of shape (m, 2)."""
        P = np.atleast_2d(np.asarray(P, dtype=float))
        Kx = cross_corr(self.kernel, P, self.X)  # (m, n)
        mean = Kx @ self.alpha
        V = solve_triangular(self.chol, Kx.T, lower=True)  # (n, m)
        var = 1.0 - np.einsum("ij,ij->j", V, V)
        return mean, np.sqrt(np.maximum(var, 0.0))


def _standardize(y: np.ndarray) -> tuple[np.ndarray, float, float]:
    mean = float(y.mean())
    scale = float(y.std())
    if not np.isfinite(scale) or scale < 1e-12:
        scale = 1.0  # constant targets: shift only
    return (y - mean) / scale, mean, scale


def _factor(K: np.ndarray) -> tuple[np.ndarray, float]:
    """Cholesky with escalating jitter; raises NumericalError past 1e-6."""
    for jitter in _JITTERS:
        try:
            L = np.linalg.cholesky(K + jitter * np.eye(K.shape[0]) if jitter else K)
            return L, jitter
        except np.linalg.LinAlgError:
            continue
    raise NumericalError(
        f"Cholesky failed for n={K.shape[0]} even with jitter {_JITTERS[-1]:g}; "
        "check for duplicate points with zero noise"
    )


def gp_fit(X: np.ndarray, y: np.ndarray, kernel: KernelSpec, noise: float = DEFAULT_NOISE) -> GPModel:
    """Fit on observations; targets standardized internally."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if X.shape[0] != y.shape[0] or X.shape[0] < 1:
        raise UsageError(f"need equal nonzero counts of points and scores, got {X.shape[0]} and {y.shape[0]}")
    if noise < 0:
        raise UsageError(f"noise must be nonnegative, got {noise}")
    if noise == 0.0 and X.shape[0] > 1:
        from scipy.spatial.distance import pdist

        if np.any(pdist(X) == 0.0):
            raise NumericalError("duplicate training points with zero noise")
    y_std, y_mean, y_scale = _standardize(y)
    K = gram(kernel, X, jitter=noise)
    L, _ = _factor(K)
    alpha = solve_triangular(L.T, solve_triangular(L, y_std, lower=True), lower=False)
    return GPModel(X=X, y=y, kernel=kernel, noise=noise, y_mean=y_mean, y_scale=y_scale, chol=L, alpha=alpha)


def gp_predict(m: GPModel, x) -> tuple[float, float]:
    """(mean in score units, variance in standardized units, clamped at 0)."""
    mean, sigma = m.posterior(np.asarray(x, dtype=float).reshape(1, 2))
    return m.y_mean + m.y_scale * float(mean[0]), float(sigma[0]) ** 2


def log_marginal_likelihood(m: GPModel) -> float:
    """Log evidence of the standardized targets under the fitted kernel."""
    y_std = (m.y - m.y_mean) / m.y_scale
    return float(
        -0.5 * y_std @ m.alpha
        - np.log(np.diag(m.chol)).sum()
        - 0.5 * m.n * np.log(2 * np.pi)
    )


def gp_fit_mle(
    X: np.ndarray,
    y: np.ndarray,
    family: str,
    noise: float = DEFAULT_NOISE,
    power: float = 1.5,
) -> GPModel:
    """Fit with the grid lengthscale maximizing log marginal likelihood.

    Ties keep the smallest lengthscale; grid points that fail numerically
    are skipped, and only if every candidate fails does this raise.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float).ravel()
    if X.shape[0] < 2:
        raise UsageError(f"lengthscale selection needs at least 2 points, got {X.shape[0]}")
    best: GPModel | None = None
    best_ll = -np.inf
    for ell in LENGTHSCALE_GRID:
        try:
            model = gp_fit(X, y, KernelSpec(family, ell, power), noise=noise)
            ll = log_marginal_likelihood(model)
        except NumericalError:
            continue
        if np.isfinite(ll) and ll > best_ll:
            best, best_ll = model, ll
    if best is None:
        raise NumericalError(f"all lengthscale candidates failed for family {family!r}")
    return best
