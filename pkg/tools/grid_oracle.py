"""Dense-grid oracle for the benchmark-function normalization constants.

Run before (re)freezing constants in searchlab.testfns:

    python tools/grid_oracle.py

For every catalog entry this script
  * evaluates the negated objective on the canonical 501x501 lattice and
    reports its minimum (the frozen ``raw_lo`` anchor),
  * locates the maximum on a dense 2001x2001 grid and confirms the declared
    optimizer value dominates it,
  * checks that normalized lattice scores span at least [0, 99].
"""

import sys

import numpy as np

sys.path.insert(0, "src")

from searchlab.testfns import _CATALOG, _raw_hi  # noqa: E402


def grid_raw(e, n):
    g = np.linspace(0.0, 1.0, n)
    u1, u2 = np.meshgrid(g, g, indexing="ij")
    (lo1, hi1), (lo2, hi2) = e.domain
    x1 = lo1 + u1 * (hi1 - lo1)
    x2 = lo2 + u2 * (hi2 - lo2)
    return -e.objective(x1, x2)


def main():
    print(f"{'name':<16} {'raw_lo (501^2)':>24} {'raw_hi':>24} {'span_top':>9} {'argmax_gap':>12}")
    ok = True
    for e in _CATALOG:
        raw501 = grid_raw(e, 501)
        raw_lo = float(raw501.min())
        raw_hi = _raw_hi(e)

        # declared optimizer must dominate the dense grid
        raw2001 = grid_raw(e, 2001)
        grid_max = float(raw2001.max())
        argmax_gap = raw_hi - grid_max  # >= 0 (up to round-off) if declared point wins

        # normalized lattice span: top must reach >= 99 (bottom is 0 by construction)
        span_top = 100.0 * (raw501.max() - raw_lo) / (raw_hi - raw_lo)

        flag = ""
        if argmax_gap < -1e-9:
            flag += " BAD-ARGMAX"
            ok = False
        if span_top < 99.0:
            flag += " BAD-SPAN"
            ok = False
        print(f"{e.name:<16} {raw_lo!r:>24} {raw_hi!r:>24} {span_top:>9.4f} {argmax_gap:>12.3e}{flag}")
    print("OK" if ok else "FAILURES", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
