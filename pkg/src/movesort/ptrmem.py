"""Bits and pointer words encoded in the relative order of element pairs.

Two equally long regions ``left`` and ``right`` hold elements such that every
element of ``left`` is strictly smaller than every element of ``right``.  Bit
``j`` is 1 exactly when the pair at offset ``j`` is swapped, so reading a bit
is one comparison and flipping it is one swap.
"""


class PointerMemory:
    def __init__(self, arr, left_base, right_base, capacity_bits, word_width=1):
        if capacity_bits < 0 or word_width < 1:
            raise ValueError("bad pointer memory geometry")
        self.arr = arr
        self.left_base = left_base
        self.right_base = right_base
        self.capacity_bits = capacity_bits
        self.word_width = word_width
        self.word_count = capacity_bits // word_width

    def _check_bit(self, j):
        if not 0 <= j < self.capacity_bits:
            raise IndexError(f"bit {j} outside pointer memory of {self.capacity_bits}")

    def _check_word(self, k):
        if not 0 <= k < self.word_count:
            raise IndexError(f"word {k} outside pointer memory of {self.word_count}")

    def read_bit(self, j):
        self._check_bit(j)
        return int(self.arr.less(self.right_base + j, self.left_base + j))

    def set_bit(self, j, v):
        if self.read_bit(j) != v:
            self.arr.swap(self.left_base + j, self.right_base + j)

    def read_word(self, k):
        self._check_word(k)
        arr = self.arr
        keys = arr.keys
        p = self.word_width
        lo = self.left_base + k * p
        ro = self.right_base + k * p
        v = 0
        for i in range(p):
            v = (v << 1) | (keys[ro + i] < keys[lo + i])
        arr.comparisons += p
        return v

    def write_word(self, k, v):
        """Encode v in word k, bit k*p first (most significant)."""
        self._check_word(k)
        p = self.word_width
        if not 0 <= v < 1 << p:
            raise ValueError(f"value {v} does not fit in {p} bits")
        base = k * p
        for i in range(p):
            self.set_bit(base + i, (v >> (p - 1 - i)) & 1)

    def take_word(self, k):
        """Read word k and clear it in the same pass."""
        self._check_word(k)
        p = self.word_width
        base = k * p
        v = 0
        for i in range(p):
            bit = self.read_bit(base + i)
            if bit:
                self.arr.swap(self.left_base + base + i, self.right_base + base + i)
            v = (v << 1) | bit
        return v

    def move_word(self, src, dst):
        self.write_word(dst, self.take_word(src))

    def clear_all(self):
        """Zero every bit; both regions return to their original order."""
        arr = self.arr
        keys = arr.keys
        lb, rb = self.left_base, self.right_base
        arr.comparisons += self.capacity_bits
        for j in range(self.capacity_bits):
            if keys[rb + j] < keys[lb + j]:
                arr.swap(lb + j, rb + j)
