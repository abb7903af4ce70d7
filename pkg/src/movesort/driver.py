"""The in-place sort: pointer memory, quartile partition loop, short residue.

Layout during the loop::

    PiL | sorted prefix | unsorted part A_U | PiR

``PiL``/``PiR`` hold the ``P`` smallest / largest elements, sorted, and double
as a bit memory for the block sorter.  Each round selects the element of rank
``ceil(n_i / 4)`` of ``A_U`` as separator, block-sorts the elements below it
with the rest of ``A_U`` as buffer, then peels off the elements equal to the
separator.  Once ``A_U`` has at most ``2**16`` elements it is short-sorted.
"""

import time
from dataclasses import dataclass, field

from .blocksort import BlockSorter
from .heaps import build_and_pull_extremes, short_sort
from .metered import ContractViolation, CostReport, MeteredArray
from .params import SHORT_LIMIT, derive, driver_pointer_budget
from .ptrmem import PointerMemory
from .select import collect_left, select_rank

VARIANTS = ("cmp", "move")


@dataclass
class Round:
    n_i: int
    n_less: int
    n_equal: int
    n_greater: int
    blocksorted: bool


@dataclass
class DriverState:
    n: int
    P: int = 0
    variant: str = "cmp"
    all_equal: bool = False
    sorted_prefix_end: int = 0
    rounds: list = field(default_factory=list)
    placed: list = field(default_factory=list)  # final intervals fixed per round

    @property
    def iterations(self):
        return len(self.rounds)

    def sum_n_i(self):
        return sum(rd.n_i for rd in self.rounds)


def build_pointer_memory(arr, P):
    """Collect PiR (largest P) then PiL (smallest P); True when all keys are equal."""
    n = arr.n
    with arr.phase("build_ptr"):
        build_and_pull_extremes(arr, 0, n, P, "largest")
        build_and_pull_extremes(arr, 0, n - P, P, "smallest")
        return not arr.less(P - 1, n - P)


def _check_memory_order(arr, P):
    keys, n = arr.keys, arr.n
    left, right = keys[:P], keys[n - P:n]
    if left != sorted(left) or right != sorted(right) or not left[-1] < right[0]:
        raise ContractViolation("pointer memory blocks lost their order")


def separate_equal(arr, w, hi):
    """Step after block sorting: ``[w, hi - 1)`` is mixed, the separator sits at ``hi - 1``.

    Parks the first element of the mixed part aside, moves the separator
    right behind the sorted block, and collects the elements equal to it
    (processing the parked one last).  Returns the start of the elements
    strictly greater than the separator.
    """
    keys, tags = arr.keys, arr.tags
    cell = arr.free_aside()
    arr.assign(cell, w)
    arr.assign(w, hi - 1)
    pivot = keys[w]
    hole = hi - 1
    pos = w + 1
    moves = 0
    for e in range(w + 1, hi - 1):
        if not pivot < keys[e]:
            if e != pos:
                if hole != pos:
                    keys[hole] = keys[pos]
                    if tags is not None:
                        tags[hole] = tags[pos]
                    moves += 1
                keys[pos] = keys[e]
                if tags is not None:
                    tags[pos] = tags[e]
                moves += 1
                hole = e
            pos += 1
    arr.comparisons += hi - 1 - (w + 1)
    arr.moves += moves
    if not arr.less(w, cell):
        if hole != pos:
            arr.assign(hole, pos)
        arr.assign(pos, cell)
        pos += 1
    else:
        arr.assign(hole, cell)
    return pos


def sort_array(arr, variant="cmp", check=False):
    """Sort a :class:`MeteredArray` in place; returns the :class:`DriverState`."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    n = arr.n
    state = DriverState(n, variant=variant)
    if n <= 1:
        return state
    if n <= SHORT_LIMIT:
        short_sort(arr, 0, n)
        state.sorted_prefix_end = n
        return state
    P = driver_pointer_budget(n)
    state.P = P
    if build_pointer_memory(arr, P):
        state.all_equal = True
        state.sorted_prefix_end = n
        return state
    if check:
        _check_memory_order(arr, P)
    lo, hi = P, n - P
    while hi - lo > SHORT_LIMIT:
        n_i = hi - lo
        select_rank(arr, lo, hi, -(-n_i // 4))
        with arr.phase("partition"):
            w = collect_left(arr, lo, hi - 1, hi - 1, strict=True)
        n_less = w - lo
        n_geq = hi - 1 - w
        if 3 * n_less - 1 > n_geq:
            raise ContractViolation(f"buffer of {n_geq} too short for block of {n_less}")
        blocksorted = n_less > SHORT_LIMIT
        if blocksorted:
            params = derive(n_less)
            if params.P_bits > P:
                raise ContractViolation("pointer memory too small")
            ptr = PointerMemory(arr, 0, n - P, params.P_bits, params.p)
            levels = 5 if variant == "cmp" else 4
            BlockSorter(arr, lo, n_less, w, n_geq, hi - 1, ptr, params,
                        variant=variant, max_levels=levels).sort_block()
            with arr.phase("glue"):
                ptr.clear_all()
            if check:
                _check_memory_order(arr, P)
        elif n_less > 1:
            short_sort(arr, lo, w)
        if n_geq == 0:
            new_lo = hi
        else:
            with arr.phase("partition"):
                new_lo = separate_equal(arr, w, hi)
        n_equal = new_lo - w - 1
        state.rounds.append(Round(n_i, n_less, n_equal, hi - new_lo, blocksorted))
        state.placed.append((lo, new_lo))
        lo = new_lo
        state.sorted_prefix_end = lo
    if hi - lo > 1:
        short_sort(arr, lo, hi)
    state.placed.append((lo, hi))
    state.sorted_prefix_end = hi
    if check:
        if state.sum_n_i() > 4 * n:
            raise ContractViolation("partition rounds exceeded 4n elements in total")
        for (a0, a1), (b0, _) in zip(state.placed, state.placed[1:]):
            if a1 != b0 or a1 < a0:
                raise ContractViolation("final intervals of two rounds overlap")
        for rd in state.rounds:
            if 4 * rd.n_greater > 3 * rd.n_i:
                raise ContractViolation("a round kept more than 3/4 of its elements")
    return state


def sort(elements, variant="cmp", instrument=True, check=False, distribution="",
         seed=0):
    """Sort a sequence of keys; returns a :class:`CostReport` carrying ``output``.

    ``instrument`` keeps original-index tags on every element so the output
    can be checked to be a permutation of the input.
    """
    arr = MeteredArray(elements, tags=instrument)
    t0 = time.perf_counter_ns()
    sort_array(arr, variant=variant, check=check)
    elapsed = time.perf_counter_ns() - t0
    if arr.aside_in_use():
        raise ContractViolation("an aside cell is still occupied after sorting")
    report = CostReport.from_array(arr, elapsed, distribution=distribution, seed=seed,
                                   variant=variant, algo="fg")
    report.array = arr
    return report
