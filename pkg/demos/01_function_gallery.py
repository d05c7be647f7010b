"""Tour of the 15 game stimuli.

Every benchmark lives on the unit square with scores normalized to [0,100]
and the global maximum pinned at exactly 100, so one click budget and one
compliance threshold make sense across all of them. This script prints the
catalog with a few summary statistics, and (if matplotlib is around) saves
a heatmap gallery to demos/out/function_gallery.png.
"""

import numpy as np

from searchlab import testfns

grid = np.linspace(0, 1, 201)
P = np.stack(np.meshgrid(grid, grid, indexing="ij"), axis=-1)

print(f"{'id':>2} {'name':<16} {'argmax (normalized)':<24} {'median':>7} {'p90':>7}")
for fid in testfns.list_functions():
    fn = testfns.get_function(fid)
    scores = testfns.evaluate_many(fid, P)
    ax, ay = fn.known_argmax
    print(
        f"{fid.id:>2} {fid.name:<16} ({ax:.3f}, {ay:.3f})           "
        f"{np.median(scores):>7.2f} {np.percentile(scores, 90):>7.2f}"
    )
    assert testfns.evaluate(fid, fn.known_argmax) == 100.0

print("\nScores are deterministic; the same click always scores the same:")
p = (0.25, 0.6)
print(f"  branin{p} -> {testfns.evaluate(0, p):.4f} == {testfns.evaluate(0, p):.4f}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the heatmap gallery")
else:
    from pathlib import Path

    fig, axes = plt.subplots(3, 5, figsize=(16, 9))
    for fid, ax_ in zip(testfns.list_functions(), axes.ravel()):
        scores = testfns.evaluate_many(fid, P)
        ax_.imshow(scores.T, origin="lower", extent=(0, 1, 0, 1), cmap="viridis")
        best = testfns.get_function(fid).known_argmax
        ax_.plot(*best, "r*", markersize=8)
        ax_.set_title(f"{fid.id}: {fid.name}", fontsize=9)
        ax_.set_xticks([]), ax_.set_yticks([])
    fig.suptitle("Normalized stimuli (star = global maximum, score 100)")
    out = Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    fig.savefig(out / "function_gallery.png", dpi=110, bbox_inches="tight")
    print(f"\nwrote {out / 'function_gallery.png'}")
