"""Gaussian-process regression on a handful of clicks.

Fits a GP to six observations of the Branin stimulus and walks a horizontal
slice through the posterior: near data the mean tracks the clicks and the
uncertainty collapses; far away the standardized posterior relaxes back to
the prior (mean -> click average, sigma -> 1). Also shows what maximum
likelihood picks for the lengthscale of each kernel family.
"""

import numpy as np

from searchlab import testfns
from searchlab.gp import gp_fit, gp_fit_mle, gp_predict, log_marginal_likelihood
from searchlab.kernels import FAMILIES, KernelSpec

rng = np.random.default_rng(7)
X = rng.random((6, 2))
y = np.array([testfns.evaluate(0, p) for p in X])
print("observations:")
for p, s in zip(X, y):
    print(f"  ({p[0]:.3f}, {p[1]:.3f}) -> {s:.2f}")

model = gp_fit(X, y, KernelSpec("se", 0.2))
print("\nposterior along the slice x2 = 0.15 (squared exponential, l = 0.2):")
print(f"{'x1':>5} {'mean':>8} {'sigma_std':>10}")
for x1 in np.linspace(0, 1, 11):
    mean, var = gp_predict(model, (x1, 0.15))
    print(f"{x1:>5.2f} {mean:>8.2f} {np.sqrt(var):>10.3f}")

# interpolation: with near-zero noise the GP passes through the clicks
model0 = gp_fit(X, y, KernelSpec("se", 0.2), noise=0.0)
worst = max(abs(gp_predict(model0, p)[0] - s) for p, s in zip(X, y))
print(f"\nmax training residual at zero noise: {worst:.2e}")

print("\nmaximum-likelihood lengthscale per kernel family (same data):")
for family in FAMILIES:
    m = gp_fit_mle(X, y, family)
    print(f"  {family:<9} l = {m.kernel.lengthscale:>7.4f}   log evidence = {log_marginal_likelihood(m):8.3f}")
