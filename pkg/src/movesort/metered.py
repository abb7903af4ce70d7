"""Element store with exact comparison and move accounting.

Every element lives either in one of the ``n`` slots or in one of two aside
cells.  Aside cells are addressed as slot indices ``n`` and ``n + 1`` so the
same integer reference works for both kinds of storage.

The public primitives (:meth:`MeteredArray.less`, :meth:`MeteredArray.assign`,
:meth:`MeteredArray.swap`) check the aside-cell contract on every call.  The
algorithm modules also touch ``keys``/``tags`` directly inside their hot loops;
those loops add their exact comparison and move totals to the counters in bulk
and never use aside cells except through :meth:`assign` and :meth:`swap`.
"""

from collections import namedtuple
from contextlib import contextmanager

PHASES = (
    "build_ptr",
    "select",
    "insert",
    "seg_rebalance",
    "frame_rebalance",
    "extract",
    "partition",
    "short_sort",
    "glue",
)

Checkpoint = namedtuple("Checkpoint", "comparisons moves aside_peak")
Delta = namedtuple("Delta", "comparisons moves")


class ContractViolation(RuntimeError):
    """An element primitive was used outside its contract."""


class MeteredArray:
    """The element array plus two aside cells and the cost counters.

    ``tags`` holds the original index of every element when tag tracking is
    on; tags travel with their keys and are never consulted by comparisons.
    """

    def __init__(self, keys, tags=True):
        keys = list(keys)
        n = len(keys)
        self.n = n
        self.keys = keys + [None, None]
        self.tags = list(range(n)) + [None, None] if tags else None
        self._occupied = [False, False]
        self.comparisons = 0
        self.moves = 0
        self.aside_peak = 0
        self.phase_costs = {name: [0, 0] for name in PHASES}
        self._phase = "glue"
        self._flushed = (0, 0)

    def __len__(self):
        return self.n

    @property
    def aside0(self):
        return self.n

    @property
    def aside1(self):
        return self.n + 1

    def is_aside(self, ref):
        return ref >= self.n

    def aside_occupied(self, ref):
        return self._occupied[ref - self.n]

    def aside_in_use(self):
        return sum(self._occupied)

    def free_aside(self):
        """Reference of an empty aside cell; faults when both are taken."""
        for c in (0, 1):
            if not self._occupied[c]:
                return self.n + c
        raise ContractViolation("both aside cells are occupied")

    def _check_ref(self, ref):
        if ref < 0 or ref >= self.n + 2:
            raise IndexError(f"element reference {ref} out of range")
        if ref >= self.n and not self._occupied[ref - self.n]:
            raise ContractViolation(f"aside cell {ref - self.n} is empty")

    # -- element primitives -------------------------------------------------

    def less(self, i, j):
        self._check_ref(i)
        self._check_ref(j)
        self.comparisons += 1
        return self.keys[i] < self.keys[j]

    def assign(self, dst, src):
        """Copy ``src`` into ``dst``; the source becomes the hole.

        A slot source keeps a stale copy.  An aside source is marked empty.
        Writing into an occupied aside cell would destroy an element and
        faults.
        """
        self._check_ref(src)
        n = self.n
        if dst < 0 or dst >= n + 2:
            raise IndexError(f"element reference {dst} out of range")
        if src >= n:
            self._occupied[src - n] = False
        if dst >= n:
            c = dst - n
            if self._occupied[c]:
                raise ContractViolation(f"aside cell {c} is occupied")
            self._occupied[c] = True
            used = self._occupied[0] + self._occupied[1]
            if used > self.aside_peak:
                self.aside_peak = used
        self.keys[dst] = self.keys[src]
        if self.tags is not None:
            self.tags[dst] = self.tags[src]
        self.moves += 1

    def swap(self, i, j):
        """Exchange two slots through a free aside cell (3 moves)."""
        if i >= self.n or j >= self.n:
            raise ContractViolation("swap operands must be slots")
        cell = self.free_aside()
        self.assign(cell, i)
        self.assign(i, j)
        self.assign(j, cell)

    def note_aside(self, extra):
        """Record that a hot loop held ``extra`` aside cells on top of the
        ones currently occupied (used by inlined swaps)."""
        used = self._occupied[0] + self._occupied[1] + extra
        if used > 2:
            raise ContractViolation("more than two aside cells in use")
        if used > self.aside_peak:
            self.aside_peak = used

    # -- counters -------------------------------------------------------------

    def checkpoint(self):
        return Checkpoint(self.comparisons, self.moves, self.aside_peak)

    def delta(self, since):
        return Delta(self.comparisons - since.comparisons, self.moves - since.moves)

    def _flush(self):
        c0, m0 = self._flushed
        cost = self.phase_costs[self._phase]
        cost[0] += self.comparisons - c0
        cost[1] += self.moves - m0
        self._flushed = (self.comparisons, self.moves)

    @contextmanager
    def phase(self, name):
        """Attribute all counter increments inside the block to ``name``.

        Nested phases win over enclosing ones, so the per-phase totals
        always sum to the grand totals.
        """
        if name not in self.phase_costs:
            raise KeyError(name)
        self._flush()
        outer, self._phase = self._phase, name
        try:
            yield
        finally:
            self._flush()
            self._phase = outer

    def phase_report(self):
        self._flush()
        return {name: tuple(cost) for name, cost in self.phase_costs.items()}

    # -- inspection (uncounted, for verification only) -------------------------

    def values(self, lo=0, hi=None):
        return self.keys[lo:self.n if hi is None else hi]

    def is_permutation_of(self, original):
        """Tag check: slots hold exactly the input elements, none lost."""
        if self.tags is None:
            return sorted(self.keys[: self.n]) == sorted(original)
        tags = self.tags[: self.n]
        if sorted(tags) != list(range(self.n)):
            return False
        keys = self.keys
        return all(keys[i] == original[t] for i, t in enumerate(tags))


# -- cost records ----------------------------------------------------------------

REPORT_PHASES = PHASES

_HEAD = ("n", "distribution", "seed", "variant", "algo", "comparisons", "moves",
         "aside_peak")


class CostReport:
    """Counters of one sorting run, in a fixed field order.

    ``output`` (the sorted keys) rides along for verification but is not
    part of the emitted record.
    """

    def __init__(self, n, distribution, seed, variant, algo, comparisons, moves,
                 aside_peak, phases, wall_time_ns, output=None):
        self.n = n
        self.distribution = distribution
        self.seed = seed
        self.variant = variant
        self.algo = algo
        self.comparisons = comparisons
        self.moves = moves
        self.aside_peak = aside_peak
        self.phases = {name: tuple(phases.get(name, (0, 0))) for name in REPORT_PHASES}
        self.wall_time_ns = wall_time_ns
        self.output = output

    @classmethod
    def from_array(cls, arr, wall_time_ns=0, n=None, distribution="", seed=0,
                   variant="cmp", algo="fg"):
        return cls(arr.n if n is None else n, distribution, seed, variant, algo,
                   arr.comparisons, arr.moves, arr.aside_peak, arr.phase_report(),
                   wall_time_ns, output=arr.values())

    def fields(self):
        """(name, value) pairs in record order."""
        out = [(k, getattr(self, k)) for k in _HEAD]
        for name in REPORT_PHASES:
            c, m = self.phases[name]
            out.append((f"{name}_cmp", c))
            out.append((f"{name}_mov", m))
        out.append(("wall_time_ns", self.wall_time_ns))
        return out

    def as_dict(self):
        return dict(self.fields())

    def to_line(self):
        return " ".join(f"{k}={v}" for k, v in self.fields())

    def csv_header(self):
        return ",".join(k for k, _ in self.fields())

    def to_csv(self):
        return ",".join(str(v) for _, v in self.fields())

    @classmethod
    def parse_line(cls, line):
        """Inverse of :meth:`to_line` (values come back as int where possible)."""
        raw = dict(item.split("=", 1) for item in line.split())

        def conv(v):
            try:
                return int(v)
            except ValueError:
                return v

        vals = {k: conv(v) for k, v in raw.items()}
        phases = {name: (vals[f"{name}_cmp"], vals[f"{name}_mov"]) for name in REPORT_PHASES}
        return cls(vals["n"], vals["distribution"], vals["seed"], vals["variant"],
                   vals["algo"], vals["comparisons"], vals["moves"], vals["aside_peak"],
                   phases, vals["wall_time_ns"])

    def phase_totals_match(self):
        """Per-phase counters add up to the grand totals."""
        c = sum(v[0] for v in self.phases.values())
        m = sum(v[1] for v in self.phases.values())
        return c == self.comparisons and m == self.moves

    def __repr__(self):
        return f"CostReport({self.to_line()})"
