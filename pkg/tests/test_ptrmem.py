import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from movesort.metered import MeteredArray
from movesort.ptrmem import PointerMemory


def make(bits, p=4, gap=3):
    """Left block 0..bits-1, ``gap`` filler slots, right block above."""
    keys = list(range(bits)) + [-1] * gap + list(range(1000, 1000 + bits))
    arr = MeteredArray(keys)
    return arr, PointerMemory(arr, 0, bits + gap, bits, p)


def ordered(arr, mem):
    keys = arr.keys
    left = keys[mem.left_base:mem.left_base + mem.capacity_bits]
    right = keys[mem.right_base:mem.right_base + mem.capacity_bits]
    return left == sorted(left) and right == sorted(right) and left[-1] < right[0]


def test_fresh_memory_reads_zero():
    arr, mem = make(64)
    assert all(mem.read_bit(j) == 0 for j in range(64))
    assert arr.comparisons == 64 and arr.moves == 0


def test_set_bit_then_read():
    arr, mem = make(16)
    mem.set_bit(5, 1)
    assert mem.read_bit(5) == 1
    assert arr.moves == 3


def test_set_clear_read_costs():
    arr, mem = make(16)
    mem.set_bit(3, 1)
    mem.set_bit(3, 0)
    assert mem.read_bit(3) == 0
    assert (arr.comparisons, arr.moves) == (3, 6)


def test_idempotent_set():
    arr, mem = make(16)
    mem.set_bit(2, 1)
    cp = arr.checkpoint()
    mem.set_bit(2, 1)
    assert tuple(arr.delta(cp)) == (1, 0)


def test_out_of_range():
    _, mem = make(8, p=4)
    with pytest.raises(IndexError):
        mem.read_bit(8)
    with pytest.raises(IndexError):
        mem.set_bit(-1, 0)
    with pytest.raises(IndexError):
        mem.read_word(2)
    with pytest.raises(ValueError):
        mem.write_word(0, 16)


def test_word_roundtrip_and_move():
    arr, mem = make(16, p=4)
    mem.write_word(0, 13)
    assert mem.read_word(0) == 13
    mem.write_word(2, 5)
    mem.move_word(2, 3)
    assert mem.read_word(2) == 0 and mem.read_word(3) == 5


def test_big_endian_layout():
    _, mem = make(8, p=4)
    mem.write_word(1, 0b1000)
    assert [mem.read_bit(j) for j in range(4, 8)] == [1, 0, 0, 0]


def test_write_word_cost_bound():
    p = 4
    for old in range(1 << p):
        for v in range(1 << p):
            arr, mem = make(8, p=p)
            mem.write_word(0, old)
            cp = arr.checkpoint()
            mem.write_word(0, v)
            c, m = arr.delta(cp)
            assert c <= p and m <= 3 * p
            assert m == 3 * bin(old ^ v).count("1")


def test_clear_on_fresh_memory_moves_nothing():
    arr, mem = make(32)
    mem.clear_all()
    assert arr.moves == 0 and arr.comparisons == 32


def test_clear_all_restores_order_and_cost():
    rng = random.Random(5)
    for _ in range(50):
        bits = rng.randint(1, 60)
        arr, mem = make(bits, p=1)
        for _ in range(rng.randint(0, 100)):
            mem.set_bit(rng.randrange(bits), rng.randint(0, 1))
        cp = arr.checkpoint()
        mem.clear_all()
        c, m = arr.delta(cp)
        assert c <= bits and m <= 3 * bits
        assert ordered(arr, mem)
        assert all(mem.read_bit(j) == 0 for j in range(bits))


@given(st.lists(st.tuples(st.sampled_from(["write", "move", "take"]),
                          st.integers(0, 7), st.integers(0, 7), st.integers(0, 7)),
                max_size=60))
def test_words_roundtrip_like_a_dict(ops):
    arr, mem = make(24, p=3)
    model = [0] * 8
    before = sorted(arr.values())
    for op, a, b, v in ops:
        if op == "write":
            mem.write_word(a, v)
            model[a] = v
        elif op == "move":
            mem.move_word(a, b)
            model[a], model[b] = 0, model[a]
        else:
            assert mem.take_word(a) == model[a]
            model[a] = 0
    assert [mem.read_word(k) for k in range(8)] == model
    assert sorted(arr.values()) == before
    mem.clear_all()
    assert ordered(arr, mem)
    assert arr.is_permutation_of(list(range(24)) + [-1] * 3 + list(range(1000, 1024)))
