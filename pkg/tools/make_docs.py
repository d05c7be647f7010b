"""Regenerate docs/function_catalog.md from the function catalog."""

import sys
from pathlib import Path

sys.path.insert(0, "src")

from searchlab.testfns import LATTICE_SIZE, catalog_rows  # noqa: E402

HEADER = """\
# Benchmark function catalog

All stimuli are standard 2D global-optimization benchmarks, exposed on the
normalized domain [0,1]^2 with scores on [0,100] oriented for maximization
(the classic minimization forms are negated). The affine score map of each
function is anchored at `raw_hi` (negated objective at the known optimizer;
normalized score exactly 100) and `raw_lo` (worst negated objective on the
{n}x{n} evaluation lattice; normalized score 0). Scores are clamped to
[0,100] off-lattice. Constants are derived by `tools/grid_oracle.py` and
frozen in `searchlab/testfns.py`.

This particular 15-function set is a stand-in choice among standard
benchmark libraries; it spans smooth, multimodal, flat, and
needle-in-a-haystack regimes.

| id | name | native domain | optimizer (native) | optimizer (normalized) | raw_hi | raw_lo |
|---:|------|---------------|--------------------|------------------------|--------|--------|
"""


def main():
    rows = []
    for r in catalog_rows():
        (lo1, hi1), (lo2, hi2) = r["native_domain"]
        ax, ay = r["argmax_native"]
        nx, ny = r["argmax_normalized"]
        rows.append(
            f"| {r['id']} | {r['name']} | [{lo1:g},{hi1:g}] x [{lo2:g},{hi2:g}] "
            f"| ({ax:.9g}, {ay:.9g}) | ({nx:.6f}, {ny:.6f}) "
            f"| {r['raw_hi']:.9g} | {r['raw_lo']:.9g} |"
        )
    out = Path("docs/function_catalog.md")
    out.parent.mkdir(exist_ok=True)
    out.write_text(HEADER.format(n=LATTICE_SIZE) + "\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
