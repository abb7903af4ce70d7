"""Sorting one block with a buffer and a pointer memory.

The block ``A`` of ``m`` active elements is sorted with the help of a buffer
region whose elements are all at least the separator (every active element is
strictly below it), so one comparison with the separator tells the two kinds
apart.  The buffer holds

* the *frame*: ``R`` slots at its left end, ``r#`` blocks of ``r`` slots.
  Frame actives are sorted left to right, each active block holds between 1
  and ``r - 1`` of them left-justified, and the active blocks form a prefix;
* the *segments*: slots of length ``s`` allocated from the right end.  A
  segment holds unsorted actives left-justified, between ``s // 2`` and
  ``s - 1`` of them.  Segment number ``o`` starts at ``end - (o + 1) * s``.

Frame position ``q`` owns pointer word ``q``, which names the segment of
actives lying between ``x_q`` and the next frame active.  Segment 0 (for
actives below the first frame active) is implicit.

Data moves follow the hole discipline: exactly one location is free at any
time.  Its *home* is the slot of ``A`` consumed last; whenever a rebalance
leaves the hole inside a searched structure, one extra move brings the buffer
element parked at home back into it, so no stale active copy ever remains
inside a segment or the frame between operations.
"""

from .heaps import MIN, HeapShape, extract_min_refill, heapify
from .metered import ContractViolation, MeteredArray
from .params import SortParams
from .ptrmem import PointerMemory
from .select import select_rank


class InvariantViolation(AssertionError):
    """A structural invariant of the block sorter does not hold."""


def count_below(keys, lo, n, probe, stride=1):
    """Binary search over ``n`` slots whose keys are below ``probe`` on a prefix.

    Returns ``(count, comparisons)``; comparisons never exceed
    ``1 + floor(log2 n)``.
    """
    a, b, comps = 0, n, 0
    while a < b:
        mid = (a + b) >> 1
        comps += 1
        if keys[lo + mid * stride] < probe:
            a = mid + 1
        else:
            b = mid
    return a, comps


def halve_segment(arr, s, seg, pivot, fresh, hole):
    """Split the ``s - 1`` actives of the segment at ``seg`` around the key at ``pivot``.

    The segment holds its actives in its first ``s - 1`` slots.  Exactly
    ``s // 2`` of them end at the front of ``fresh`` ("large": above the
    pivot, or equal once enough equal ones stayed), the others stay at the
    front of ``seg``; the buffer elements of ``fresh`` they displace land
    in ``seg``.  Returns the final hole, which lies in ``seg``.
    """
    keys, tags = arr.keys, arr.tags
    half = s // 2
    pv = keys[pivot]
    below = 0
    for i in range(seg, seg + s - 1):
        if keys[i] < pv:
            below += 1
    comps = s - 1
    c = half - below
    moves = 0
    u_lo, u_hi = seg, seg + s - 2
    b2 = fresh
    moved = 0
    while moved < half:
        x = keys[u_hi]
        comps += 1
        if x < pv:
            large = False
        elif c > 0:
            comps += 1
            large = pv < x
            if not large:
                c -= 1
        else:
            large = True
        if large:
            keys[hole] = keys[b2]
            keys[b2] = x
            if tags is not None:
                tags[hole] = tags[b2]
                tags[b2] = tags[u_hi]
            moves += 2
        else:
            while True:
                if u_lo >= u_hi:
                    raise InvariantViolation("halving found too many small elements")
                y = keys[u_lo]
                comps += 1
                if y < pv:
                    u_lo += 1
                    continue
                if c > 0:
                    comps += 1
                    if not pv < y:
                        c -= 1
                        u_lo += 1
                        continue
                break
            keys[hole] = keys[b2]
            keys[b2] = keys[u_lo]
            keys[u_lo] = x
            if tags is not None:
                tags[hole] = tags[b2]
                tags[b2] = tags[u_lo]
                tags[u_lo] = tags[u_hi]
            moves += 3
            u_lo += 1
        hole = u_hi
        u_hi -= 1
        b2 += 1
        moved += 1
    arr.comparisons += comps
    arr.moves += moves
    return hole


def node_overflows(alpha, level, r):
    """A tree node ``level`` steps above the blocks overflows past ``(r - level)`` per block."""
    return alpha > (r - level) << level


def spread_counts(alpha, width):
    """Actives per block when ``alpha`` actives are spread over ``width`` blocks."""
    a_d, a_m = divmod(alpha, width)
    return [a_d + 1 if b < a_m else a_d for b in range(width)]


class BlockSortState:
    """Bookkeeping of one block-sort invocation (all index variables)."""

    __slots__ = ("f", "g", "sigma0", "segments", "hole", "out_cursor", "f_max", "h0",
                 "inserted")

    def __init__(self, hole):
        self.f = 0          # frame actives
        self.g = 0          # active frame blocks
        self.sigma0 = 0     # ordinal of the segment below the first frame active
        self.segments = 1   # allocated segments (segment 0 exists from the start)
        self.hole = hole
        self.out_cursor = None
        self.f_max = 0
        self.h0 = 0         # occupancy of segment 0 while the frame is empty
        self.inserted = 0

    def __repr__(self):
        return (f"BlockSortState(f={self.f}, g={self.g}, segments={self.segments}, "
                f"hole={self.hole}, inserted={self.inserted})")


class BlockSorter:
    """Sort ``A = [a_lo, a_lo + m)`` using ``[buf_lo, buf_lo + buf_len)`` as buffer.

    ``sep`` is the slot of the separator.  ``ptr`` must provide ``params.R``
    words of ``params.p`` bits, all zero.  With ``check`` every public step
    re-verifies the structure and the frame-rebalance charging rule.
    """

    def __init__(self, arr, a_lo, m, buf_lo, buf_len, sep, ptr, params,
                 variant="cmp", check=False, max_levels=None):
        if buf_len < params.R + params.S:
            raise ValueError(f"buffer of {buf_len} cannot hold frame {params.R} "
                             f"and segments {params.S}")
        if ptr.word_width != params.p or ptr.word_count < params.R:
            raise ValueError("pointer memory too small for the frame")
        if arr.aside_in_use():
            raise ContractViolation("block sort needs both aside cells free")
        self.arr = arr
        self.a_lo = a_lo
        self.m = m
        self.frame = buf_lo
        self.buf_end = buf_lo + buf_len
        self.sep = sep
        self.ptr = ptr
        self.params = params
        self.s = params.s
        self.r = params.r
        self.R = params.R
        self.t = params.segment_degree(variant)
        self.max_levels = max_levels
        self.check = check
        self.state = BlockSortState(arr.aside0)
        self.ledger = {"rebalance_segment": 0, "rebalance_frame": 0, "frame_levels": []}
        self._clock = 0
        self._cover = {}
        self._frame_inserts = []

    # -- geometry -------------------------------------------------------------

    def seg_start(self, ordinal):
        return self.buf_end - (ordinal + 1) * self.s

    def _move(self, dst, src):
        """One uncontracted move between slots (inside the hot paths)."""
        arr = self.arr
        arr.keys[dst] = arr.keys[src]
        if arr.tags is not None:
            arr.tags[dst] = arr.tags[src]

    # -- insertion ------------------------------------------------------------

    def insert_one(self, src):
        """Insert the active element at slot ``src`` into the structure."""
        with self.arr.phase("insert"):
            self._insert(src)
        if self.check:
            self.verify()

    def _insert(self, src):
        arr, st = self.arr, self.state
        keys = arr.keys
        s, r = self.s, self.r
        a = keys[src]
        if st.g == 0:
            q, j, o, h = -1, 0, 0, st.h0
        else:
            sep_key = keys[self.sep]
            comps = 0
            j = 0
            if st.g >= 2:
                j, comps = count_below(keys, self.frame + r, st.g - 1, a, stride=r)
            c_in, c = count_below(keys, self.frame + j * r, r, a)
            comps += c
            arr.comparisons += comps
            if c_in == 0:
                q, o = -1, 0
            else:
                q = j * r + c_in - 1
                o = self.ptr.read_word(q)
            h, c = count_below(keys, self.seg_start(o), s, sep_key)
            arr.comparisons += c
        dst = self.seg_start(o) + h
        hole = st.hole
        if hole >= arr.n:
            arr.assign(hole, dst)
        else:
            self._move(hole, dst)
            arr.moves += 1
        keys[dst] = a
        if arr.tags is not None:
            arr.tags[dst] = arr.tags[src]
        arr.moves += 1
        st.hole = src
        st.inserted += 1
        if st.g == 0:
            st.h0 += 1
        if h + 1 == s:
            self.rebalance_segment(o, q, j)

    # -- segment level --------------------------------------------------------

    def rebalance_segment(self, o, q, j):
        """Split the full segment ``o`` owned by frame position ``q`` (block ``j``).

        The median moves into the frame right after ``x_q``; the actives and
        pointers between it and the first buffer slot of the block shift one
        position right; a fresh segment takes the upper half.
        """
        arr, st, ptr = self.arr, self.state, self.ptr
        keys = arr.keys
        s, r, frame = self.s, self.r, self.frame
        with arr.phase("seg_rebalance"):
            sep_key = keys[self.sep]
            cj, c = count_below(keys, frame + j * r, r, sep_key)
            arr.comparisons += c
            if cj >= r:
                raise InvariantViolation(f"frame block {j} has no free slot")
            qp = j * r + cj
            seg = self.seg_start(o)
            select_rank(arr, seg, seg + s, s // 2 + 1, phase=None)
            # rotate: b◇ to the hole, x_{q+1}..x_{qp-1} one right, median in
            home = st.hole
            self._move(home, frame + qp)
            for e in range(qp, q + 1, -1):
                self._move(frame + e, frame + e - 1)
            self._move(frame + q + 1, seg + s - 1)
            arr.moves += qp - q + 1
            hole = seg + s - 1
            for e in range(qp - 1, q, -1):
                ptr.move_word(e, e + 1)
            fresh = st.segments
            if fresh >= self.params.s_cap:
                raise ContractViolation("segment memory exhausted")
            st.segments += 1
            ptr.write_word(q + 1, fresh)
            st.f += 1
            hole = self.halve_segment(seg, frame + q + 1, self.seg_start(fresh), hole)
            self._move(hole, home)
            arr.moves += 1
            st.hole = home
            if st.g == 0:
                st.g = 1
            self.ledger["rebalance_segment"] += 1
            self._clock += 1
            self._frame_inserts.append((self._clock, j))
            if cj + 1 == r:
                self.rebalance_frame(j)
        if self.check:
            self.verify()

    def halve_segment(self, seg, pivot, fresh, hole):
        return halve_segment(self.arr, self.s, seg, pivot, fresh, hole)

    # -- frame level ----------------------------------------------------------

    def rebalance_frame(self, j):
        """Spread the actives around the full block ``j`` over an ancestor's blocks."""
        arr, st, ptr = self.arr, self.state, self.ptr
        keys = arr.keys
        r, frame = self.r, self.frame
        with arr.phase("frame_rebalance"):
            sep_key = keys[self.sep]
            alpha = r
            lo_b, hi_b = j, j + 1
            comps = 0
            level = None
            for i in range(1, r):
                width = 1 << i
                b0 = (j >> i) << i
                for b in list(range(b0, lo_b)) + list(range(hi_b, b0 + width)):
                    cnt, c = count_below(keys, frame + b * r, r, sep_key)
                    alpha += cnt
                    comps += c
                lo_b, hi_b = b0, b0 + width
                if not node_overflows(alpha, i, r):
                    level = i
                    break
            arr.comparisons += comps
            if level is None:
                raise ContractViolation("frame root overflows")
            width = 1 << level
            b0 = lo_b
            if self.check:
                self._check_charging(level, b0)
            start = frame + b0 * r
            length = width * r
            home = hole = st.hole
            moves = 0
            # collect actives at the right end of the subarray
            w = start + length - 1
            for u in range(start + length - 1, start - 1, -1):
                if keys[u] < sep_key:
                    if u != w:
                        if hole != w:
                            self._move(hole, w)
                            moves += 1
                        self._move(w, u)
                        moves += 1
                        hole = u
                        ptr.move_word(u - frame, w - frame)
                    w -= 1
            arr.comparisons += length
            if start + length - 1 - w != alpha:
                raise InvariantViolation("active count changed during compaction")
            # spread them back, left-justified, the first alpha_M blocks get one more
            src = start + length - alpha
            for b, cnt in enumerate(spread_counts(alpha, width)):
                dst = start + b * r
                for _ in range(cnt):
                    if src != dst:
                        if hole != dst:
                            self._move(hole, dst)
                            moves += 1
                        self._move(dst, src)
                        moves += 1
                        hole = src
                        ptr.move_word(src - frame, dst - frame)
                    src += 1
                    dst += 1
            if hole != home:
                self._move(hole, home)
                moves += 1
            arr.moves += moves
            st.g = max(st.g, b0 + width)
            self.ledger["rebalance_frame"] += 1
            self.ledger["frame_levels"].append(level)
            self._clock += 1
            for lvl in range(level + 1):
                for idx in range(b0 >> lvl, (b0 + width) >> lvl):
                    self._cover[(lvl, idx)] = self._clock
            if self.check:
                for b in range(b0, b0 + width):
                    cnt = sum(1 for x in keys[frame + b * r: frame + (b + 1) * r]
                              if x < sep_key)
                    if not 1 <= cnt <= r - level:
                        raise InvariantViolation(
                            f"block {b} holds {cnt} actives after a level-{level} rebalance")

    def _check_charging(self, level, b0):
        """At least 2**(level-1) frame inserts hit the subarray since it was last spread."""
        since = self._cover.get((level, b0 >> level), 0)
        hits = sum(1 for when, blk in self._frame_inserts
                   if when > since and b0 <= blk < b0 + (1 << level))
        if hits < 1 << (level - 1):
            raise InvariantViolation(
                f"level-{level} node at block {b0} rebalanced after only {hits} inserts")

    # -- extraction -----------------------------------------------------------

    def extract_all(self):
        """Move every active back to ``A`` in sorted order."""
        arr, st, ptr = self.arr, self.state, self.ptr
        keys = arr.keys
        frame = self.frame
        with arr.phase("extract"):
            sep_key = keys[self.sep]
            out = self.a_lo
            hole = st.hole
            out, hole = self._extract_segment(0, out, hole)
            for q in range(self.R):
                arr.comparisons += 1
                if keys[frame + q] < sep_key:
                    if hole != out:
                        self._move(hole, out)
                        arr.moves += 1
                    self._move(out, frame + q)
                    arr.moves += 1
                    hole = frame + q
                    out += 1
                    o = ptr.read_word(q)
                    out, hole = self._extract_segment(o, out, hole)
            st.hole = hole
            st.out_cursor = out
        if out != self.a_lo + self.m:
            raise InvariantViolation(f"extracted {out - self.a_lo} of {self.m} actives")

    def _extract_segment(self, o, out, hole):
        arr = self.arr
        keys = arr.keys
        sep_key = keys[self.sep]
        seg = self.seg_start(o)
        h, c = count_below(keys, seg, self.s, sep_key)
        arr.comparisons += c
        shape = HeapShape(seg, h, self.t, MIN, 1, max_levels=self.max_levels)
        heapify(arr, shape)
        check_key = sep_key if self.check else None
        for _ in range(h):
            hole = extract_min_refill(arr, shape, out, hole, separator=check_key)
            out += 1
        return out, hole

    # -- driver ---------------------------------------------------------------

    def sort_block(self):
        """Insert every element of ``A``, then extract them in sorted order."""
        arr, st = self.arr, self.state
        if self.check:
            self._check_separator()
        if self.m == 0:
            return
        with arr.phase("insert"):
            for src in range(self.a_lo, self.a_lo + self.m):
                self._insert(src)
        if self.check:
            self.verify()
        st.f_max = st.f
        self.extract_all()
        with arr.phase("extract"):
            arr.assign(st.hole, arr.aside0)
        st.hole = None

    # -- verification (uncounted) ---------------------------------------------

    def _check_separator(self):
        keys = self.arr.keys
        sep_key = keys[self.sep]
        if any(not keys[i] < sep_key for i in range(self.a_lo, self.a_lo + self.m)):
            raise ContractViolation("an element of A is not below the separator")
        if any(keys[i] < sep_key for i in range(self.frame, self.buf_end)):
            raise ContractViolation("a buffer element is below the separator")

    def _peek_word(self, q):
        keys, ptr = self.arr.keys, self.ptr
        p = ptr.word_width
        v = 0
        for i in range(q * p, (q + 1) * p):
            v = (v << 1) | (keys[ptr.right_base + i] < keys[ptr.left_base + i])
        return v

    def verify(self):
        """Re-check every structural invariant by direct inspection."""
        keys = self.arr.keys
        st = self.state
        sep_key = keys[self.sep]
        r, s, frame = self.r, self.s, self.frame
        blocks = self.R // r
        actives = []
        for b in range(blocks):
            flags = [x < sep_key for x in keys[frame + b * r: frame + (b + 1) * r]]
            cnt = sum(flags)
            if flags != [True] * cnt + [False] * (r - cnt):
                raise InvariantViolation(f"frame block {b} is not left-justified")
            if b < st.g and not 1 <= cnt <= r - 1:
                raise InvariantViolation(f"active frame block {b} holds {cnt} actives")
            if b >= st.g and cnt:
                raise InvariantViolation(f"frame block {b} beyond g={st.g} is active")
            actives.extend(frame + b * r + i for i in range(cnt))
        if len(actives) != st.f:
            raise InvariantViolation(f"frame holds {len(actives)} actives, f={st.f}")
        vals = [keys[q] for q in actives]
        if any(vals[i + 1] < vals[i] for i in range(len(vals) - 1)):
            raise InvariantViolation("frame actives are not sorted")
        owners = {0: (None, vals[0] if vals else None)}
        for q in range(self.R):
            w = self._peek_word(q)
            if frame + q in actives:
                if not 1 <= w < st.segments or w in owners:
                    raise InvariantViolation(f"frame position {q} has bad pointer {w}")
                idx = actives.index(frame + q)
                upper = vals[idx + 1] if idx + 1 < len(vals) else None
                owners[w] = (vals[idx], upper)
            elif w:
                raise InvariantViolation(f"buffer frame position {q} has pointer {w}")
        if len(owners) != st.segments:
            raise InvariantViolation("allocated segments without a frame owner")
        total = st.f
        for o in range(self.params.s_cap):
            seg = self.seg_start(o)
            flags = [x < sep_key for x in keys[seg: seg + s]]
            cnt = sum(flags)
            if o >= st.segments:
                if cnt:
                    raise InvariantViolation(f"free segment {o} holds actives")
                continue
            if flags != [True] * cnt + [False] * (s - cnt):
                raise InvariantViolation(f"segment {o} is not left-justified")
            low_ok = cnt >= s // 2 or (o == 0 and st.f == 0)
            if not low_ok or cnt > s - 1:
                raise InvariantViolation(f"segment {o} holds {cnt} actives")
            lower, upper = owners[o]
            for x in keys[seg: seg + cnt]:
                if (lower is not None and x < lower) or (upper is not None and upper < x):
                    raise InvariantViolation(f"segment {o} holds {x} outside its range")
            total += cnt
        if total != st.inserted:
            raise InvariantViolation(f"structure holds {total} actives, inserted {st.inserted}")


def block_instance(active, params, variant="cmp", check=False, tags=True, max_levels=None):
    """A self-contained block-sort setup around the integer keys ``active``.

    Layout: ``PiL | A | buffer | separator | PiR``.  The separator and the
    buffer keys lie above every active key and the pointer-memory keys lie
    outside that whole range.  Returns ``(arr, sorter)``.
    """
    m = len(active)
    top = (max(active) + 1) if active else 0
    buf_len = max(3 * m - 1, params.R + params.S)
    bits = params.P_bits
    left = list(range(-2 * bits - 1, -bits - 1))
    right = [top + buf_len + 10 + i for i in range(bits)]
    buffer = [top + 1 + i for i in range(buf_len)]
    keys = left + list(active) + buffer + [top] + right
    arr = MeteredArray(keys, tags=tags)
    a_lo = bits
    buf_lo = a_lo + m
    sep = buf_lo + buf_len
    ptr = PointerMemory(arr, 0, sep + 1, bits, params.p)
    sorter = BlockSorter(arr, a_lo, m, buf_lo, buf_len, sep, ptr, params,
                         variant=variant, check=check, max_levels=max_levels)
    return arr, sorter


def reduced_instance(active, s=5, r=4, t=2, variant="cmp", check=True, tags=True):
    """:func:`block_instance` with tiny parameters, for exhaustive tests.

    Raises ``ValueError`` when ``(len(active), s, r)`` gives a frame too
    small for the segments (see :meth:`SortParams.reduced`).
    """
    params = SortParams.reduced(max(len(active), 1), s=s, r=r, t=t)
    return block_instance(active, params, variant=variant, check=check, tags=tags)
