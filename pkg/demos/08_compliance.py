"""Which acquisition function does a search trace resemble?

The analyzer replays a trace: at every iteration it refits the surrogate on
the clicks so far, asks PI, EI, and UCB where they would click next, and
checks which proposal lands within the threshold of the click that actually
happened. The most frequent pointwise winner is the trace's strategy.

Here we manufacture traces whose generating strategy we know (machine BO
runs plus a uniform-random clicker) and watch the analyzer recover them.
The `searchlab simulate` + `searchlab analyze` commands scale this to the
full threshold x beta experiment grid.
"""

from searchlab.acquisition import AcquisitionSpec
from searchlab.boloop import GPSpec, run_bo, run_random_search
from searchlab.compliance import ComplianceConfig, aggregate, analyze_trace_gp, relabel

generators = {
    "EI": AcquisitionSpec("EI"),
    "PI": AcquisitionSpec("PI"),
    "UCB": AcquisitionSpec("UCB", beta=1.0),
}

cfg = ComplianceConfig(threshold=0.10, kernel_family="se", seed=0)

records = []
print("generator -> verdict (threshold 0.10, GP-SE analyzer):")
for name, acq in generators.items():
    for seed in range(3):
        trace = run_bo(seed % 15, GPSpec(), acq, m=5, N=20, seed=seed)
        rec = analyze_trace_gp(trace, cfg)
        records.append(rec)
        print(f"  {name:<4} seed {seed} -> {rec.strategy:<14} compliant fraction {rec.compliant_fraction:.2f}")

for seed in range(3):
    trace = run_random_search(seed % 15, 25, seed=90 + seed)
    rec = analyze_trace_gp(trace, cfg)
    records.append(rec)
    print(f"  random clicks  -> {rec.strategy:<14} compliant fraction {rec.compliant_fraction:.2f}")

print("\naggregate counts (rows = surrogate, columns = strategy):")
table = aggregate(records)
for surrogate, row in table.items():
    print(f"  {surrogate}: {row}")

loose = aggregate(relabel(r, 0.15) for r in records)
print("\nsame distances relabeled at threshold 0.15 (never less compliant):")
for surrogate, row in loose.items():
    print(f"  {surrogate}: {row}")
