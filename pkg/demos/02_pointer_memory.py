"""
Bits stored in the order of element pairs
=========================================

Take ``P`` small elements (sorted) and ``P`` large ones (sorted).  Pair
``j`` stores one bit: 0 when the small element sits on the left, 1 when the
pair is swapped.  Reading costs one comparison, writing at most one swap,
and clearing everything restores both blocks to sorted order.
"""

from movesort.metered import MeteredArray
from movesort.ptrmem import PointerMemory

P = 12
arr = MeteredArray(list(range(P)) + list(range(100, 100 + P)))
mem = PointerMemory(arr, left_base=0, right_base=P, capacity_bits=P, word_width=4)

mem.write_word(0, 13)
mem.write_word(2, 6)
print("words:", [mem.read_word(k) for k in range(3)])
print("left block: ", arr.values(0, P))
print("right block:", arr.values(P))

mem.move_word(2, 1)
print("after moving word 2 -> 1:", [mem.read_word(k) for k in range(3)])

before = arr.checkpoint()
mem.clear_all()
print("clear_all cost (comparisons, moves):", tuple(arr.delta(before)))
print("left block: ", arr.values(0, P))
print("right block:", arr.values(P))
