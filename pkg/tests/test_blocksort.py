import itertools
import math
import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from movesort.blocksort import (InvariantViolation, block_instance, count_below, halve_segment,
                                node_overflows, reduced_instance, spread_counts)
from movesort.metered import ContractViolation, MeteredArray
from movesort.params import SortParams, derive


def active_slice(arr, sorter):
    return arr.values(sorter.a_lo, sorter.a_lo + sorter.m)


# -- binary search ----------------------------------------------------------------


@given(st.lists(st.integers(0, 50), max_size=64), st.integers(-1, 52), st.integers(1, 4))
def test_count_below(xs, probe, stride):
    xs = sorted(xs)
    keys = []
    for x in xs:
        keys += [x] + [None] * (stride - 1)
    count, comps = count_below(keys, 0, len(xs), probe, stride)
    assert count == sum(x < probe for x in xs)
    assert comps <= 1 + math.floor(math.log2(len(xs))) if xs else comps == 0


# -- halving ----------------------------------------------------------------------


def run_halving(actives, pivot, buffer_base=100):
    s = len(actives) + 1
    half = s // 2
    keys = list(actives) + [-7] + [buffer_base + i for i in range(s)] + [pivot]
    arr = MeteredArray(keys)
    hole = halve_segment(arr, s, 0, 2 * s, s, s - 1)
    out = arr.values()
    small, large = out[:half], out[s:s + half]
    rest = [k for i, k in enumerate(out) if i != hole]
    assert sorted(rest) == sorted(k for i, k in enumerate(keys) if i != s - 1)
    assert 0 <= hole < s
    # the displaced buffer keys now sit in the segment
    assert sorted(k for k in out[:s] if k >= buffer_base) == list(range(buffer_base,
                                                                        buffer_base + half))
    return arr, small, large


@pytest.mark.parametrize("order", list(itertools.permutations([4, 1, 5, 2])))
def test_halving_distinct_example(order):
    arr, small, large = run_halving(order, 3)
    assert sorted(small) == [1, 2] and sorted(large) == [4, 5]


def test_halving_with_equal_keys():
    for order in set(itertools.permutations([3, 3, 1, 3])):
        _, small, large = run_halving(order, 3)
        assert sorted(small) == [1, 3] and sorted(large) == [3, 3]


@pytest.mark.parametrize("s", [3, 5, 7, 9, 11, 21, 101, 1001])
def test_halving_cost_bounds(s):
    rng = random.Random(s)
    for _ in range(200):
        pool = rng.randint(1, s)
        vals = [rng.randint(0, pool) for _ in range(s)]
        vals.sort()
        pivot = vals[s // 2]
        act = vals[:s // 2] + vals[s // 2 + 1:]
        rng.shuffle(act)
        arr, small, large = run_halving(act, pivot, buffer_base=10**6)
        assert max(small) <= pivot <= min(large)
        assert sorted(small + large) == sorted(act)
        assert arr.comparisons <= 3 * s
        assert arr.moves <= math.ceil(1.5 * s)


# -- frame arithmetic ---------------------------------------------------------------


def test_frame_toy_redistribution():
    # r = 4: a level-1 node holds at most (4 - 1) * 2 = 6 actives
    assert not node_overflows(5, 1, 4)
    assert node_overflows(7, 1, 4)
    assert spread_counts(5, 2) == [3, 2]


def test_exactly_full_node_spreads_evenly():
    for r in range(2, 8):
        for i in range(1, r):
            alpha = (r - i) << i
            assert not node_overflows(alpha, i, r)
            assert spread_counts(alpha, 1 << i) == [r - i] * (1 << i)


@given(st.integers(1, 12), st.integers(0, 6))
def test_spread_counts_shape(alpha, lvl):
    width = 1 << lvl
    counts = spread_counts(alpha, width)
    assert sum(counts) == alpha and max(counts) - min(counts) <= 1
    assert counts == sorted(counts, reverse=True)


# -- insertion --------------------------------------------------------------------


def test_first_inserts_stay_in_sigma0():
    arr, so = reduced_instance([9, 3, 7, 1, 8, 2], s=5, r=4)
    for i in range(4):
        so.insert_one(so.a_lo + i)
        assert so.state.g == 0 and so.state.f == 0
    seg0 = so.seg_start(0)
    assert sorted(arr.keys[seg0:seg0 + 4]) == [1, 3, 7, 9]


def test_first_split_promotes_median_to_a1():
    arr, so = reduced_instance([8, 12, 10, 9, 11], s=5, r=4)
    for i in range(5):
        so.insert_one(so.a_lo + i)
    st_ = so.state
    assert (st_.f, st_.g, st_.segments) == (1, 1, 2)
    assert arr.keys[so.frame] == 10
    assert so.ledger["rebalance_segment"] == 1
    seg0, seg1 = so.seg_start(0), so.seg_start(1)
    assert sorted(arr.keys[seg0:seg0 + 2]) == [8, 9]
    assert sorted(arr.keys[seg1:seg1 + 2]) == [11, 12]
    assert so._peek_word(0) == 1


def _segment_of(so, arr, key):
    for o in range(so.state.segments):
        seg = so.seg_start(o)
        if key in arr.keys[seg:seg + so.s]:
            return o
    return None


def test_insert_routes_between_frame_leaders():
    acts = [8, 9, 10, 11, 12, 30, 31, 32, 20, 5]
    arr, so = reduced_instance(acts, s=5, r=4)
    for i in range(8):
        so.insert_one(so.a_lo + i)
    assert arr.keys[so.frame:so.frame + 2] == [10, 30]
    owner = so._peek_word(0)          # segment below a_1 = 10 .. a_2 = 30
    so.insert_one(so.a_lo + 8)        # 20
    assert _segment_of(so, arr, 20) == owner
    so.insert_one(so.a_lo + 9)        # 5 <= a_1: k = 0
    assert _segment_of(so, arr, 5) == 0


def test_insert_equal_to_leader_goes_left():
    # a_k < a <= a_{k+1}: an element equal to a_1 belongs below it
    arr, so = reduced_instance([8, 12, 10, 9, 11, 10], s=5, r=4)
    for i in range(6):
        so.insert_one(so.a_lo + i)
    seg0 = so.seg_start(0)
    assert 10 in arr.keys[seg0:seg0 + 3]


def test_insertion_moves_two_per_element():
    rng = random.Random(3)
    acts = [rng.randint(0, 500) for _ in range(300)]
    arr, so = reduced_instance(acts, s=21, r=6, t=3, check=False)
    so.sort_block()
    ins_c, ins_m = arr.phase_report()["insert"]
    assert ins_m <= 2 * len(acts)


# -- whole block --------------------------------------------------------------------


@given(st.lists(st.integers(0, 40), min_size=1, max_size=80),
       st.sampled_from([3, 5, 7, 9]), st.integers(2, 6), st.integers(2, 4),
       st.sampled_from(["cmp", "move"]))
def test_reduced_block_sorts_with_checks(acts, s, r, t, variant):
    try:
        arr, so = reduced_instance(acts, s=s, r=r, t=t, variant=variant)
    except ValueError:
        assume(False)
    so.sort_block()
    assert active_slice(arr, so) == sorted(acts)
    assert arr.is_permutation_of(arr_input(acts, so))
    assert not arr.aside_in_use() and arr.aside_peak <= 2


def arr_input(acts, so):
    # rebuild the original key layout (block_instance is deterministic)
    fresh, _ = block_instance(acts, so.params)
    return fresh.values()


def test_all_equal_block():
    acts = [5] * 40
    arr, so = reduced_instance(acts, s=5, r=5)
    so.sort_block()
    assert active_slice(arr, so) == acts
    assert so.ledger["rebalance_segment"] > 0


def test_separator_violation_detected():
    arr, so = reduced_instance([1, 2, 3, 4], s=5, r=4)
    arr.keys[so.a_lo] = arr.keys[so.sep]
    with pytest.raises(ContractViolation):
        so.sort_block()


def test_verify_catches_corruption():
    arr, so = reduced_instance(list(range(20)), s=5, r=5)
    for i in range(12):
        so.insert_one(so.a_lo + i)
    so.verify()
    fa, fb = so.frame, so.frame + 1
    if arr.keys[fb] < arr.keys[so.sep]:
        arr.keys[fa], arr.keys[fb] = arr.keys[fb], arr.keys[fa]
    else:
        arr.keys[fa] = arr.keys[so.sep] + 1000   # drop an active from block 0
    with pytest.raises(InvariantViolation):
        so.verify()


def test_frame_rebalance_levels_exercised():
    rng = random.Random(8)
    levels = set()
    for _ in range(150):
        m = rng.randint(40, 120)
        acts = [rng.randint(0, 10**6) for _ in range(m)]
        try:
            arr, so = reduced_instance(acts, s=3, r=rng.randint(4, 7))
        except ValueError:
            continue
        so.sort_block()
        assert active_slice(arr, so) == sorted(acts)
        levels.update(so.ledger["frame_levels"])
    assert {1, 2} <= levels


def test_real_parameters_reverse_block():
    m = (1 << 16) + 1
    acts = list(range(m, 0, -1))
    arr, so = block_instance(acts, derive(m), tags=False)
    so.sort_block()
    assert active_slice(arr, so) == sorted(acts)
    lg = math.log2(m)
    assert arr.phase_report()["insert"][1] <= 2 * m
    assert arr.comparisons <= 2 * m * lg + 30 * m * lg ** 0.8
    rep = arr.phase_report()
    # 6 per extraction, heapify swaps (3 per internal node at most), frame items
    assert rep["extract"][1] <= 6 * m + 3 * (m // so.t + 1) + 2 * so.R + 1
    assert not arr.aside_in_use()


def test_move_variant_uses_four_level_heaps():
    m = (1 << 16) + 1
    rng = random.Random(1)
    acts = [rng.randint(0, 10**9) for _ in range(m)]
    p = derive(m)
    arr, so = block_instance(acts, p, variant="move", tags=False, max_levels=4)
    assert so.t == p.t_build
    so.sort_block()
    assert active_slice(arr, so) == sorted(acts)
