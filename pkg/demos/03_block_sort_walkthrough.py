"""
Watching the block sorter at toy size
=====================================

The block sorter keeps a sparse sorted *frame* of sample elements and,
between consecutive samples, an unsorted *segment*.  With tiny parameters
(segments of 5 slots, frame blocks of 4) every step is small enough to
print.  Keys below the separator are "active"; the rest is buffer.
"""

import random

from movesort.blocksort import reduced_instance

rng = random.Random(4)
active = rng.sample(range(100), 14)
arr, sorter = reduced_instance(active, s=5, r=4, t=2)
sep = arr.keys[sorter.sep]


def show():
    keys = arr.keys
    frame = [k if k < sep else "." for k in keys[sorter.frame:sorter.frame + sorter.R]]
    blocks = [frame[i:i + sorter.r] for i in range(0, sorter.R, sorter.r)][:max(1, sorter.state.g)]
    segs = []
    for o in range(sorter.state.segments):
        start = sorter.seg_start(o)
        segs.append([k for k in keys[start:start + sorter.s] if k < sep])
    print(f"  frame blocks {blocks}")
    print(f"  segments (allocation order) {segs}")


print("input:", active)
for i in range(len(active)):
    sorter.insert_one(sorter.a_lo + i)   # re-verifies every invariant on the way
    print(f"inserted {active[i]} (segment splits so far: {sorter.ledger['rebalance_segment']})")
    show()

sorter.extract_all()
arr.assign(sorter.state.hole, arr.aside0)
print("sorted:", arr.values(sorter.a_lo, sorter.a_lo + len(active)))
print("phase costs:", {k: v for k, v in arr.phase_report().items() if v != (0, 0)})
