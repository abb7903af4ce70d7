"""Derived sizes for the block sorter: segments, frame, pointer words, heap degrees.

All logarithms are base 2.  Integer logarithms use ``bit_length``; the one
real-valued quantity, ``(log m)**4``, is computed in floating point and
recomputed with 60-digit decimals whenever it lands near an integer, so the
ceilings below never depend on rounding luck.
"""

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext

SHORT_LIMIT = 1 << 16

_GUARD = 1e-9  # relative; float log2 error is ~1e-16


def floor_log2(x):
    return x.bit_length() - 1


def ceil_log2(x):
    """Smallest k with 2**k >= x, for integer x >= 1."""
    return (x - 1).bit_length()


def ceil_root(y, k):
    """Smallest integer t >= 1 with t**k >= y."""
    t = max(1, math.ceil(y ** (1.0 / k)))
    while t > 1 and (t - 1) ** k >= y:
        t -= 1
    while t**k < y:
        t += 1
    return t


def _dec_log2(m):
    return Decimal(m).ln() / Decimal(2).ln()


def ceil_log_pow4(m):
    """``ceil((log m)**4)`` for an integer m >= 2."""
    k = floor_log2(m)
    if m == 1 << k:
        return k**4
    x = math.log2(m) ** 4
    c = math.ceil(x)
    if c - x > _GUARD * c and x - (c - 1) > _GUARD * c:
        return c
    # log m is irrational here, so (log m)**4 is never an integer
    with localcontext() as ctx:
        ctx.prec = 60
        return int((_dec_log2(m) ** 4).to_integral_value(rounding=ROUND_CEILING))


def floor_over_log_sq(numer, m, offset=0):
    """``floor(numer / (log m - offset)**2)`` for integers, log m > offset."""
    k = floor_log2(m)
    if m == 1 << k:
        return numer // (k - offset) ** 2
    y = numer / (math.log2(m) - offset) ** 2
    f = math.floor(y)
    if y - f > _GUARD * max(1, y) and (f + 1) - y > _GUARD * max(1, y):
        return f
    with localcontext() as ctx:
        ctx.prec = 60
        val = Decimal(numer) / (_dec_log2(m) - offset) ** 2
        return int(val.to_integral_value(rounding=ROUND_FLOOR))


def heap_levels(size, t):
    """Level count of a multi-root heap with t roots and t sons per node."""
    levels, width, covered = 0, t, 0
    while covered < size:
        covered += width
        width *= t
        levels += 1
    return levels


@dataclass(frozen=True)
class SortParams:
    m: int
    s: int
    s_cap: int
    S: int
    r: int
    r_cap: int
    R: int
    p: int
    p_cap: int
    P_bits: int
    t_seg: int
    t_build: int
    q_build: int

    @property
    def half(self):
        return self.s // 2

    def segment_degree(self, variant="cmp"):
        """Extraction-heap degree: ``cmp`` keeps 5 levels, ``move`` keeps 4."""
        if variant == "cmp":
            return self.t_seg
        if variant == "move":
            return self.t_build
        raise ValueError(f"unknown variant {variant!r}")

    @classmethod
    def reduced(cls, m, s=5, r=4, t=2):
        """Tiny parameter set for exhaustive tests of the block sorter.

        ``s`` must be odd and the frame must hold every element that can
        ever be promoted into it, i.e. ``s_cap - 1 <= 2**(r - 1)``.
        """
        if s < 3 or s % 2 == 0:
            raise ValueError("segment length must be odd and >= 3")
        if r < 2 or t < 2:
            raise ValueError("need r >= 2 and t >= 2")
        s_cap = max(1, 2 * m // s)
        r_cap = 1 << (r - 1)
        if s_cap - 1 > r_cap:
            raise ValueError(f"frame too small: s_cap={s_cap}, r_cap={r_cap}")
        R = r * r_cap
        p = 1 + floor_log2(s_cap)
        return cls(m, s, s_cap, s_cap * s, r, r_cap, R, p, R, R * p,
                   t, t, heap_levels(max(m, 1), t))


def derive(m):
    """All block-sorter sizes for a block of ``m > 2**16`` elements."""
    if m <= SHORT_LIMIT:
        raise ValueError(f"block length {m} must exceed {SHORT_LIMIT}")
    c4 = ceil_log_pow4(m)
    s = c4 if c4 % 2 else c4 + 1
    s_cap = 2 * m // s
    # r = 1 + ceil(log(2m/s)): smallest k with s * 2**k >= 2m
    k = 0
    while s << k < 2 * m:
        k += 1
    r = 1 + k
    r_cap = 1 << (r - 1)
    R = r_cap * r
    p = 1 + floor_log2(s_cap)
    # ceil((log m)**(4/5)) == smallest t with t**5 >= ceil((log m)**4)
    t_seg = ceil_root(c4, 5)
    t_build = ceil_log2(m)
    params = SortParams(m, s, s_cap, s_cap * s, r, r_cap, R, p, R, R * p,
                        t_seg, t_build, heap_levels(m, t_build))
    assert s <= m and params.S <= 2 * m
    # segment capacity: one more segment than s_cap would need more actives
    # than the block has, and s_cap full segments hold all of them
    assert (s_cap + 1) * (s // 2) + s_cap > m and s_cap * (s - 1) >= m
    assert R + params.S <= 3 * m - 1
    assert params.P_bits <= pointer_bits_bound(m)
    return params


def pointer_bits_bound(m):
    """``floor(4m / (log m)**2)``, the pointer bits a block of m may use."""
    return floor_over_log_sq(4 * m, m)


def driver_pointer_budget(n):
    """Elements in each of the two pointer-memory blocks for an array of n."""
    if n <= SHORT_LIMIT:
        raise ValueError(f"array length {n} must exceed {SHORT_LIMIT}")
    return floor_over_log_sq(n, n, offset=2)
