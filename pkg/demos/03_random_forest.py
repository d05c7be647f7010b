"""The random-forest surrogate and its ensemble uncertainty.

A forest of bootstrapped regression trees gives a piecewise-constant mean;
the spread of the individual tree predictions acts as the uncertainty. In
regions all trees agree on (far inside a common leaf) the variance drops to
zero; near data boundaries the bootstrap disagreement shows up as variance.
"""

import numpy as np

from searchlab import testfns
from searchlab.rf import RFParams, rf_fit, rf_predict, rf_predict_many

rng = np.random.default_rng(3)
X = rng.random((12, 2))
y = np.array([testfns.evaluate(4, p) for p in X])  # himmelblau stimulus

model = rf_fit(X, y, RFParams(n_trees=100, seed=0))
print("forest: 100 trees, bootstrap per tree, min 2 samples per leaf")
print(f"training scores in [{y.min():.2f}, {y.max():.2f}]")

print("\nslice x2 = 0.5:")
print(f"{'x1':>5} {'mean':>8} {'sigma':>8}")
for x1 in np.linspace(0, 1, 11):
    mean, var = rf_predict(model, (x1, 0.5))
    print(f"{x1:>5.2f} {mean:>8.2f} {np.sqrt(var):>8.2f}")

# ensemble mean can never leave the observed score range
g = np.linspace(0, 1, 101)
grid = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1).reshape(-1, 2)
mean, var = rf_predict_many(model, grid)
print(f"\ngrid mean range: [{mean.min():.2f}, {mean.max():.2f}]  (bounded by the targets)")
print(f"grid variance range: [{var.min():.2f}, {var.max():.2f}]")

# determinism: refitting with the same seed rebuilds the same forest
again = rf_fit(X, y, RFParams(n_trees=100, seed=0))
same = all(
    np.array_equal(a.threshold, b.threshold) and np.array_equal(a.value, b.value)
    for a, b in zip(model.trees, again.trees)
)
print(f"\nrefit with the same seed is bit-identical: {same}")
