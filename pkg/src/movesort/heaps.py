"""Multi-root t-ary implicit heaps.

Nodes are numbered from 1.  Nodes ``1..t`` are roots, the father of node
``e > t`` is ``(e - 1) // t`` and the sons of ``e`` are ``t*e + 1 .. t*e + t``
(truncated at the heap size).  A shape maps node ``e`` to slot
``base + step * (e - 1)``, so ``step = -1`` lays a heap out right to left.

Three uses:

* :func:`extract_min_refill` -- the extraction heap of a segment.  It never
  shrinks; every extraction leaves a hole in a leaf which the next
  extraction refills with a buffer element.
* :func:`build_and_pull_extremes` -- collect the ``count`` largest (or
  smallest) elements of a region at its right (left) end, in sorted order.
* :func:`short_sort` -- a complete 5-ary heapsort for blocks of at most
  ``2**16`` elements.
"""

from .params import SHORT_LIMIT, ceil_log2, heap_levels

MIN = "min"
MAX = "max"


class HeapShape:
    """Geometry of one implicit heap: where node ``e`` lives and who its sons are."""

    __slots__ = ("base", "size", "degree", "orientation", "step")

    def __init__(self, base, size, degree, orientation=MIN, step=1, max_levels=None):
        if degree < 2:
            raise ValueError("heap degree must be at least 2")
        if orientation not in (MIN, MAX):
            raise ValueError(f"unknown orientation {orientation!r}")
        if step not in (1, -1):
            raise ValueError("step must be +1 or -1")
        self.base = base
        self.size = size
        self.degree = degree
        self.orientation = orientation
        self.step = step
        if max_levels is not None and self.levels() > max_levels:
            raise ValueError(
                f"{size} nodes of degree {degree} need {self.levels()} levels, "
                f"more than {max_levels}")

    def slot(self, e):
        return self.base + self.step * (e - 1)

    def father(self, e):
        """Father of node e, or 0 when e is a root."""
        f = (e - 1) // self.degree
        return f if f >= 1 else 0

    def sons(self, e):
        t = self.degree
        return range(t * e + 1, min(t * e + t, self.size) + 1)

    def levels(self):
        return heap_levels(self.size, self.degree)

    def check(self, keys):
        """True when every node is at least as good as each of its sons."""
        is_min = self.orientation == MIN
        for e in range(1, self.size + 1):
            for c in self.sons(e):
                a, b = keys[self.slot(e)], keys[self.slot(c)]
                if (b < a) if is_min else (a < b):
                    return False
        return True


def _best_son(keys, off, step, first, last, is_min):
    """Leftmost best node among ``first..last`` and its key (uncounted scan).

    Same result as a left-to-right scan that replaces the candidate only on
    a strict improvement; callers add the ``last - first`` comparisons.
    """
    if step == 1:
        run = keys[off + first:off + last + 1]
    else:
        run = keys[off - last:off - first + 1][::-1]
    kb = min(run) if is_min else max(run)
    return first + run.index(kb), kb


def heapify(arr, shape):
    """Establish the heap order bottom-up with sift-down swaps.

    Each sift step looks at all sons of a node (one comparison per son) and
    swaps the best son up when it beats the father (3 moves).
    """
    size, t = shape.size, shape.degree
    if size <= t:
        return
    keys, tags = arr.keys, arr.tags
    step = shape.step
    off = shape.base - step
    is_min = shape.orientation == MIN
    comps = moves = 0
    arr.note_aside(1)
    for start in range((size - 1) // t, 0, -1):
        e = start
        while True:
            first = t * e + 1
            if first > size:
                break
            last = min(first + t - 1, size)
            best, kb = _best_son(keys, off, step, first, last, is_min)
            comps += last - first + 1
            se = off + step * e
            ke = keys[se]
            if not ((kb < ke) if is_min else (ke < kb)):
                break
            sb = off + step * best
            keys[se], keys[sb] = kb, ke
            if tags is not None:
                tags[se], tags[sb] = tags[sb], tags[se]
            moves += 3
            e = best
    arr.comparisons += comps
    arr.moves += moves


def extract_min_refill(arr, shape, out, hole, separator=None):
    """Move the smallest active element of a segment heap to slot ``out``.

    First the buffer element at ``out`` is saved into ``hole``; then the
    minimum root goes to ``out`` and the chain of smallest sons is pulled up
    one level each until a leaf is vacated.  Returns that leaf's slot, the
    new hole.  With ``separator`` given (test builds) the extracted element
    is checked to be active, i.e. strictly below the separator key.
    """
    keys, tags = arr.keys, arr.tags
    t, size = shape.degree, shape.size
    step = shape.step
    off = shape.base - step
    comps = 0
    moves = 0
    if hole != out:
        keys[hole] = keys[out]
        if tags is not None:
            tags[hole] = tags[out]
        moves += 1
    roots = min(t, size)
    best, kb = _best_son(keys, off, step, 1, roots, True)
    comps += roots - 1
    if separator is not None and not kb < separator:
        raise AssertionError("a buffer element surfaced as the heap minimum")
    sb = off + step * best
    keys[out] = kb
    if tags is not None:
        tags[out] = tags[sb]
    moves += 1
    e, se = best, sb
    while True:
        first = t * e + 1
        if first > size:
            break
        last = min(first + t - 1, size)
        best, kb = _best_son(keys, off, step, first, last, True)
        comps += last - first
        sb = off + step * best
        keys[se] = kb
        if tags is not None:
            tags[se] = tags[sb]
        moves += 1
        e, se = best, sb
    arr.comparisons += comps
    arr.moves += moves
    return se


def _pull_one(arr, shape, keys, tags, is_min):
    """Remove the best root of ``shape`` into its last slot; shrink by one.

    Returns (comparisons, moves).  The displaced last element is put aside,
    the special path of best sons is located top-down, the element's place
    on that path is found by binary search, and the upper part of the path
    shifts up one level.
    """
    t, size = shape.degree, shape.size
    step = shape.step
    off = shape.base - step
    comps = 0
    roots = min(t, size)
    best, _ = _best_son(keys, off, step, 1, roots, is_min)
    comps += roots - 1
    shape.size = size - 1
    if best == size:
        return comps, 0
    size -= 1
    path = [best]
    e = best
    while True:
        first = t * e + 1
        if first > size:
            break
        last = min(first + t - 1, size)
        b, _ = _best_son(keys, off, step, first, last, is_min)
        comps += last - first
        path.append(b)
        e = b
    # x sinks below every path value that beats it; path values are monotone
    s_last = off + step * (size + 1)
    x = keys[s_last]
    lo, hi = 1, len(path)
    while lo < hi:
        mid = (lo + hi) // 2
        kv = keys[off + step * path[mid]]
        comps += 1
        if (kv < x) if is_min else (x < kv):
            lo = mid + 1
        else:
            hi = mid
    k = lo - 1
    # aside <- x; last <- root; shift path[1..k] up; path[k] <- aside
    s_root = off + step * best
    keys[s_last] = keys[s_root]
    xt = None
    if tags is not None:
        xt = tags[s_last]
        tags[s_last] = tags[s_root]
    prev = s_root
    for i in range(1, k + 1):
        cur = off + step * path[i]
        keys[prev] = keys[cur]
        if tags is not None:
            tags[prev] = tags[cur]
        prev = cur
    keys[prev] = x
    if tags is not None:
        tags[prev] = xt
    return comps, k + 3


def pull_extremes(arr, shape, count):
    """Extract ``count`` best elements from a built heap (see :func:`_pull_one`)."""
    keys, tags = arr.keys, arr.tags
    is_min = shape.orientation == MIN
    comps = moves = 0
    arr.note_aside(1)
    for _ in range(count):
        c, m = _pull_one(arr, shape, keys, tags, is_min)
        comps += c
        moves += m
    arr.comparisons += comps
    arr.moves += moves


def build_and_pull_extremes(arr, lo, hi, count, side="largest", degree=None):
    """Collect the ``count`` extreme elements of [lo, hi) in sorted order.

    ``side="largest"`` leaves the largest elements ascending in the last
    ``count`` slots; ``side="smallest"`` mirrors every index and leaves the
    smallest elements ascending in the first ``count`` slots.  The heap
    degree defaults to ``ceil(log2(hi - lo))``.
    """
    length = hi - lo
    if not 0 <= count <= length:
        raise ValueError(f"cannot pull {count} elements from {length}")
    if length <= 1 or count == 0:
        return
    t = degree if degree is not None else max(2, ceil_log2(length))
    if side == "largest":
        shape = HeapShape(lo, length, t, MAX, 1)
    elif side == "smallest":
        shape = HeapShape(hi - 1, length, t, MIN, -1)
    else:
        raise ValueError(f"unknown side {side!r}")
    heapify(arr, shape)
    pull_extremes(arr, shape, min(count, length - 1))


def short_sort(arr, lo, hi):
    """Sort [lo, hi) with a 5-root, 5-ary max-heapsort (at most 2**16 slots)."""
    m = hi - lo
    if m > SHORT_LIMIT:
        raise ValueError(f"short blocks hold at most {SHORT_LIMIT} elements, got {m}")
    if m <= 1:
        return
    with arr.phase("short_sort"):
        shape = HeapShape(lo, m, 5, MAX, 1, max_levels=7)
        heapify(arr, shape)
        pull_extremes(arr, shape, m - 1)
