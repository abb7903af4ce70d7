"""
Counting comparisons and moves
==============================

Every element lives in a ``MeteredArray``: ``n`` slots plus two aside
cells.  Comparisons and element assignments are the only ways to touch
elements, and each one is counted.
"""

from movesort.metered import MeteredArray

arr = MeteredArray([30, 10, 20])

# A comparison costs one unit.
print("10 < 30:", arr.less(1, 0), "| comparisons:", arr.comparisons)

# A swap goes through an aside cell: three assignments.
arr.swap(0, 1)
print("after swap:", arr.values(), "| moves:", arr.moves)

# The aside cells are addressed as slots n and n + 1.  Parking an element
# and moving a run of elements into the hole costs one move per element.
arr.assign(arr.aside0, 2)      # slot 2 becomes the hole
arr.assign(2, 1)
arr.assign(1, 0)
arr.assign(0, arr.aside0)      # rotate right by one
print("rotated:", arr.values(), "| moves:", arr.moves, "| aside peak:", arr.aside_peak)

# Costs can be attributed to named phases; nested phases win.
with arr.phase("select"):
    arr.less(0, 2)
print({k: v for k, v in arr.phase_report().items() if v != (0, 0)})

# Tags follow elements around, so any run can be checked to be a permutation.
print("still a permutation of the input:", arr.is_permutation_of([30, 10, 20]))
