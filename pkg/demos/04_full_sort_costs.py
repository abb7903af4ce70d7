"""
Where the comparisons and moves go
==================================

Sort a random permutation and break the cost down by phase, then put it
next to two textbook sorters on the same input.  Pass a larger exponent
on the command line to see the block sorter at work (it only runs on
blocks of more than 2**16 elements, i.e. from about n = 2**19 on).
"""

import math
import sys

from movesort import bench

exp = int(sys.argv[1]) if len(sys.argv) > 1 else 17
n = 1 << exp

report, verdict = bench.run_trial(n, "random", seed=0, instrument=False)
print(f"n = 2^{exp}: {report.comparisons / (n * math.log2(n)):.3f} comparisons per n log n, "
      f"{report.moves / n:.2f} moves per element ({verdict})")
print(f"{'phase':>16} {'cmp/n':>8} {'moves/n':>8}")
for name, (c, m) in report.phases.items():
    if c or m:
        print(f"{name:>16} {c / n:8.2f} {m / n:8.2f}")

# The contrast sorters are only meant for scale: heapsort swaps on every
# level, mergesort copies everything through an auxiliary array.
for algo in ("heapsort", "mergesort"):
    other, _ = bench.run_trial(n, "random", seed=0, algo=algo, instrument=False)
    print(f"{algo:>16}: {other.comparisons / (n * math.log2(n)):.3f} cmp per n log n, "
          f"{other.moves / n:.2f} moves per element, extra storage {other.aside_peak}")
