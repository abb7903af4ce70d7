"""
Moves per element across input sizes
=====================================

A linear move count shows up as a constant ``moves / n`` when the input
doubles.  The sweep below prints that ratio, the comparison slack over
``2 n log n`` and how much of the work each phase accounts for.  Sizes up
to 2**19 run in well under a minute; pass a larger top exponent for more.
"""

import sys

import numpy as np

from movesort import bench

top = int(sys.argv[1]) if len(sys.argv) > 1 else 19
ns = [1 << e for e in range(17, top + 1)]
rows = []
for n in ns:
    rep, _ = bench.run_trial(n, "random", seed=0, instrument=False)
    rows.append([rep.moves / n, bench.c1_constant(rep.comparisons, n)]
                + [rep.phases[p][1] / n for p in ("select", "partition", "short_sort",
                                                   "insert", "seg_rebalance", "extract")])

table = np.array(rows)
print(f"{'n':>9} {'moves/n':>8} {'C1':>7} | moves/n by phase: select partition short "
      f"insert seg_reb extract")
for n, row in zip(ns, table):
    print(f"{n:>9} {row[0]:8.2f} {row[1]:7.3f} | " + " ".join(f"{x:6.2f}" for x in row[2:]))
print("max/min moves per element:", round(table[:, 0].max() / table[:, 0].min(), 3))
