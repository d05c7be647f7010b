"""A full Bayesian-optimization run, next to a random-search baseline.

Five Latin-hypercube clicks to seed the surrogate, then twenty iterations of
refit -> maximize EI with focus-search -> click. The trace that comes out
has exactly the shape of a recorded human game, which is what lets the
compliance analyzer treat humans and machines identically.
"""

import numpy as np

from searchlab import testfns
from searchlab.acquisition import AcquisitionSpec
from searchlab.boloop import (
    GPSpec,
    best_so_far,
    cumulative_regret,
    run_bo,
    run_random_search,
    simple_regret,
)

FN = 3  # rastrigin
trace = run_bo(FN, GPSpec(kernel_family="se"), AcquisitionSpec("EI"), m=5, N=20, seed=1)

print(f"stimulus: {testfns.get_function(FN).id.name}, budget {trace.meta.budget} clicks")
print(f"machine id: {trace.meta.user_id}\n")
print(f"{'n':>3} {'x1':>7} {'x2':>7} {'score':>8} {'best so far':>12}")
running = best_so_far(trace)
for obs, best in zip(trace.observations, running):
    tag = "  (design)" if obs.index <= 5 else ""
    print(f"{obs.index:>3} {obs.x[0]:>7.3f} {obs.x[1]:>7.3f} {obs.y:>8.2f} {best:>12.2f}{tag}")

print(f"\nsimple regret:     {simple_regret(trace, 100.0):8.3f}")
print(f"cumulative regret: {cumulative_regret(trace, 100.0):8.3f}")

print("\nmedian simple regret over 10 seeds, 25 evaluations each:")
bo = [simple_regret(run_bo(FN, GPSpec(), AcquisitionSpec("EI"), m=5, N=20, seed=s), 100.0) for s in range(10)]
rs = [simple_regret(run_random_search(FN, 25, seed=s), 100.0) for s in range(10)]
print(f"  BO (GP-SE + EI): {np.median(bo):7.3f}")
print(f"  random search:   {np.median(rs):7.3f}")
