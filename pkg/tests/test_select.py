import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from movesort.metered import MeteredArray
from movesort.select import _median5, collect_left, select_rank


def test_single_element():
    arr = MeteredArray([42])
    select_rank(arr, 0, 1, 1)
    assert arr.values() == [42] and arr.moves == 0


@pytest.mark.parametrize("perm", list(itertools.permutations([1, 2, 3])))
@pytest.mark.parametrize("rank", [1, 2, 3])
def test_all_permutations_of_three(perm, rank):
    arr = MeteredArray(perm)
    select_rank(arr, 0, 3, rank)
    assert arr.values()[2] == rank
    assert arr.is_permutation_of(list(perm))


def test_rank_out_of_range():
    arr = MeteredArray([1, 2, 3])
    with pytest.raises(ValueError):
        select_rank(arr, 0, 3, 0)
    with pytest.raises(ValueError):
        select_rank(arr, 0, 3, 4)


def test_all_equal_range():
    keys = [7] * 1000
    arr = MeteredArray(keys)
    select_rank(arr, 0, 1000, 250)
    assert arr.values()[-1] == 7
    assert arr.is_permutation_of(keys)
    assert not arr.aside_in_use()


@pytest.mark.parametrize("perm", list(itertools.permutations(range(5))))
def test_median5_exact(perm):
    arr = MeteredArray(perm)
    assert arr.keys[_median5(arr.keys, 0, 1, 2, 3, 4)] == 2


@given(st.lists(st.integers(0, 30), min_size=1, max_size=400), st.data())
def test_matches_sorted_oracle(keys, data):
    n = len(keys)
    lo = data.draw(st.integers(0, n - 1))
    hi = data.draw(st.integers(lo + 1, n))
    rank = data.draw(st.integers(1, hi - lo))
    arr = MeteredArray(keys)
    select_rank(arr, lo, hi, rank)
    out = arr.values()
    assert out[hi - 1] == sorted(keys[lo:hi])[rank - 1]
    assert out[:lo] == keys[:lo] and out[hi:] == keys[hi:]
    assert arr.is_permutation_of(keys)
    assert arr.aside_peak <= 1 and not arr.aside_in_use()


@given(st.lists(st.integers(0, 9), max_size=200), st.integers(0, 10), st.booleans())
def test_collect_left(keys, pivot, strict):
    arr = MeteredArray(keys + [pivot])
    n = len(keys)
    w = collect_left(arr, 0, n, n, strict=strict)
    out = arr.values()
    small = [x for x in keys if (x < pivot if strict else x <= pivot)]
    assert w == len(small)
    assert sorted(out[:w]) == sorted(small)
    assert all(not (x < pivot if strict else x <= pivot) for x in out[w:n])
    assert arr.comparisons == n
    assert arr.moves <= 2 * len(small) + 1


def test_selection_cost_is_linear():
    rng = random.Random(1)
    per = []
    for n in (1000, 4000, 16000, 64000):
        keys = list(range(n))
        rng.shuffle(keys)
        arr = MeteredArray(keys, tags=False)
        select_rank(arr, 0, n, n // 2)
        per.append((arr.comparisons / n, arr.moves / n))
    cmax = max(c for c, _ in per)
    mmax = max(m for _, m in per)
    assert cmax < 15 and mmax < 8
    assert max(c for c, _ in per) / min(c for c, _ in per) < 1.3
