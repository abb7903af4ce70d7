"""Deterministic in-place selection (median of medians, groups of five).

``select_rank`` leaves the element of the requested rank in the last slot of
the range.  Group medians are found with comparisons only and gathered to the
front of the range; partitioning is three-way so long runs of equal keys
finish in one round.  Every data movement goes through a single hole, which
rests in a free aside cell between calls.
"""


def collect_left(arr, lo, hi, ref, strict=True):
    """Move the elements of [lo, hi) that are below ``keys[ref]`` to the front.

    With ``strict`` the test is ``x < ref``; otherwise ``x <= ref``.  ``ref``
    must lie outside the range.  Returns the end of the collected block.
    Costs ``hi - lo`` comparisons and at most two moves per collected element
    plus one.
    """
    keys, tags = arr.keys, arr.tags
    pivot = keys[ref]
    # only the collected elements move; find them in one pass first
    if strict:
        hits = [e for e, x in enumerate(keys[lo:hi], lo) if x < pivot]
    else:
        hits = [e for e, x in enumerate(keys[lo:hi], lo) if not pivot < x]
    w = lo
    hole = -1
    moves = 0
    for e in hits:
        if e != w:
            if hole < 0:
                cell = arr.free_aside()
                arr.assign(cell, w)
            elif hole != w:
                keys[hole] = keys[w]
                if tags is not None:
                    tags[hole] = tags[w]
                moves += 1
            keys[w] = keys[e]
            if tags is not None:
                tags[w] = tags[e]
            moves += 1
            hole = e
        w += 1
    arr.comparisons += hi - lo
    arr.moves += moves
    if hole >= 0:
        arr.assign(hole, cell)
    return w


def _small_select(arr, idx, k):
    """Position of the k-th smallest among the slots ``idx`` (comparisons only)."""
    keys = arr.keys
    order = []
    comps = 0
    for i in idx:
        x = keys[i]
        j = len(order)
        while j > 0:
            comps += 1
            if x < keys[order[j - 1]]:
                j -= 1
            else:
                break
        order.insert(j, i)
    arr.comparisons += comps
    return order[k - 1]


def _median5(keys, a, b, c, d, e):
    """Median of five slots with exactly six comparisons."""
    if keys[b] < keys[a]:
        a, b = b, a
    if keys[d] < keys[c]:
        c, d = d, c
    if keys[c] < keys[a]:
        a, b, c, d = c, d, a, b
    # a is below b, c, d: it cannot be the median; replace it by e
    a = e
    if keys[b] < keys[a]:
        a, b = b, a
    if keys[c] < keys[a]:
        a, b, c, d = c, d, a, b
    return c if keys[c] < keys[b] else b


def _gather_medians(arr, lo, hi):
    """Move the median of every group of five to the front; return their count."""
    keys, tags = arr.keys, arr.tags
    g = 0
    hole = -1
    moves = 0
    comps = 0
    for start in range(lo, hi, 5):
        end = start + 5
        if end <= hi:
            med = _median5(keys, start, start + 1, start + 2, start + 3, start + 4)
            comps += 6
        else:
            med = _small_select(arr, range(start, hi), (hi - start + 1) // 2)
        dst = lo + g
        g += 1
        if med == dst:
            continue
        if hole < 0:
            cell = arr.free_aside()
            arr.assign(cell, dst)
        elif hole != dst:
            keys[hole] = keys[dst]
            if tags is not None:
                tags[hole] = tags[dst]
            moves += 1
        keys[dst] = keys[med]
        if tags is not None:
            tags[dst] = tags[med]
        moves += 1
        hole = med
    arr.comparisons += comps
    arr.moves += moves
    if hole >= 0:
        arr.assign(hole, cell)
    return g


def _select(arr, lo, hi, k):
    """Position holding the k-th smallest of [lo, hi); permutes the range."""
    while True:
        length = hi - lo
        if length <= 5:
            return _small_select(arr, range(lo, hi), k)
        g = _gather_medians(arr, lo, hi)
        pivot = _select(arr, lo, lo + g, (g + 1) // 2)
        last = hi - 1
        if pivot != last:
            arr.swap(pivot, last)
        below = collect_left(arr, lo, last, last, strict=True)
        equal = collect_left(arr, below, last, last, strict=False)
        n_less = below - lo
        n_equal = equal - below + 1
        if k <= n_less:
            hi = below
        elif k <= n_less + n_equal:
            return last
        else:
            k -= n_less + n_equal
            lo, hi = equal, last


def select_rank(arr, lo, hi, rank, phase="select"):
    """Put an element of the given 1-based rank within [lo, hi) at ``hi - 1``.

    Costs are booked under ``phase``; pass ``None`` to leave them with the
    caller's phase.
    """
    if not 1 <= rank <= hi - lo:
        raise ValueError(f"rank {rank} outside 1..{hi - lo}")
    if phase is None:
        _select_to_end(arr, lo, hi, rank)
    else:
        with arr.phase(phase):
            _select_to_end(arr, lo, hi, rank)


def _select_to_end(arr, lo, hi, rank):
    pos = _select(arr, lo, hi, rank)
    if pos != hi - 1:
        arr.swap(pos, hi - 1)
