"""Benchmark harness: generators, verification, baseline sorters, records, CLI.

Usage::

    bench run --n 1048576 --dist random --seed 0 --variant cmp --algo fg
    bench sweep --n-list 131072,262144,524288 --dist random
    bench baseline record --file baselines/costs.json
    bench baseline check --file baselines/costs.json

Every trial emits one ``key=value`` record per line (``--csv`` switches to
comma-separated rows with a header).
"""

import argparse
import datetime
import json
import math
import platform
import sys
import time

import numpy as np

from . import __version__
from .driver import VARIANTS, sort_array
from .metered import CostReport, MeteredArray
from .select import select_rank

DISTRIBUTIONS = ("random", "sorted", "reverse", "few-distinct", "sawtooth", "organ-pipe")
ALGOS = ("fg", "heapsort", "mergesort")
DEFAULT_PARAM = {"few-distinct": 10, "sawtooth": 256}
REGRESSION_TOLERANCE = 0.05
SELECT_LENGTHS = (10**3, 10**4, 10**5, 10**6)


class UsageError(ValueError):
    pass


# -- inputs -----------------------------------------------------------------------


def parse_dist(text):
    """``"sawtooth:64"`` -> ``("sawtooth", 64)``; a missing parameter takes its default."""
    name, _, arg = text.partition(":")
    if name not in DISTRIBUTIONS:
        raise UsageError(f"unknown distribution {name!r}; choose from {', '.join(DISTRIBUTIONS)}")
    if name not in DEFAULT_PARAM:
        if arg:
            raise UsageError(f"distribution {name!r} takes no parameter")
        return name, None
    param = int(arg) if arg else DEFAULT_PARAM[name]
    if param < 1:
        raise UsageError(f"{name} parameter must be positive")
    return name, param


def generate(dist, n, seed=0):
    """Deterministic list of ``n`` int keys for a distribution name such as ``"sawtooth:64"``."""
    if n < 0:
        raise UsageError("n must be non-negative")
    name, param = parse_dist(dist)
    rng = np.random.default_rng(seed)
    if name == "random":
        return rng.permutation(n).tolist()
    if name == "sorted":
        return list(range(n))
    if name == "reverse":
        return list(range(n - 1, -1, -1))
    if name == "few-distinct":
        return rng.integers(0, param, size=n).tolist()
    if name == "sawtooth":
        return [i % param for i in range(n)]
    # organ-pipe: rises to the middle, then falls
    return [min(i, n - 1 - i) for i in range(n)]


# -- verification -------------------------------------------------------------------


class Verdict:
    def __init__(self, problems):
        self.problems = problems

    @property
    def ok(self):
        return not self.problems

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "ok" if self.ok else f"violation({'; '.join(self.problems)})"


def verify(original, arr, in_place=True):
    """Check sortedness, the tag permutation and the aside-cell budget."""
    problems = []
    out = arr.values()
    if any(out[i + 1] < out[i] for i in range(len(out) - 1)):
        problems.append("output is not sorted")
    if arr.tags is not None:
        if not arr.is_permutation_of(original):
            problems.append("output is not a tag permutation of the input")
    elif sorted(original) != out:
        problems.append("output multiset differs from the input")
    if in_place:
        if arr.aside_peak > 2:
            problems.append(f"aside peak {arr.aside_peak} exceeds 2")
        if arr.aside_in_use():
            problems.append("an aside cell is still occupied")
    return Verdict(problems)


# -- contrast sorters -----------------------------------------------------------------


def binary_heapsort(arr):
    """Textbook binary max-heap heapsort with swap-based sift-down."""
    keys, tags = arr.keys, arr.tags
    n = arr.n
    comps = moves = 0

    def sift(e, size):
        nonlocal comps, moves
        while True:
            c = 2 * e + 1
            if c >= size:
                return
            if c + 1 < size:
                comps += 1
                if keys[c] < keys[c + 1]:
                    c += 1
            comps += 1
            if not keys[e] < keys[c]:
                return
            keys[e], keys[c] = keys[c], keys[e]
            if tags is not None:
                tags[e], tags[c] = tags[c], tags[e]
            moves += 3
            e = c

    arr.note_aside(1)
    with arr.phase("short_sort"):
        for e in range(n // 2 - 1, -1, -1):
            sift(e, n)
        for end in range(n - 1, 0, -1):
            keys[0], keys[end] = keys[end], keys[0]
            if tags is not None:
                tags[0], tags[end] = tags[end], tags[0]
            moves += 3
            sift(0, end)
        arr.comparisons += comps
        arr.moves += moves


def top_down_mergesort(arr):
    """Top-down mergesort with an auxiliary array; every copy counts as a move.

    Returns the auxiliary size, which this sorter needs on top of the array.
    """
    keys, tags = arr.keys, arr.tags
    n = arr.n
    aux_k = [None] * n
    aux_t = [None] * n if tags is not None else None
    comps = moves = 0

    def rec(lo, hi):
        nonlocal comps, moves
        if hi - lo < 2:
            return
        mid = (lo + hi) // 2
        rec(lo, mid)
        rec(mid, hi)
        aux_k[lo:hi] = keys[lo:hi]
        if aux_t is not None:
            aux_t[lo:hi] = tags[lo:hi]
        moves += hi - lo
        i, j, k = lo, mid, lo
        while i < mid and j < hi:
            comps += 1
            if aux_k[j] < aux_k[i]:
                keys[k] = aux_k[j]
                if aux_t is not None:
                    tags[k] = aux_t[j]
                j += 1
            else:
                keys[k] = aux_k[i]
                if aux_t is not None:
                    tags[k] = aux_t[i]
                i += 1
            k += 1
        while i < mid:
            keys[k] = aux_k[i]
            if aux_t is not None:
                tags[k] = aux_t[i]
            i += 1
            k += 1
        while j < hi:
            keys[k] = aux_k[j]
            if aux_t is not None:
                tags[k] = aux_t[j]
            j += 1
            k += 1
        moves += hi - lo

    with arr.phase("short_sort"):
        rec(0, n)
        arr.comparisons += comps
        arr.moves += moves
    return n


# -- trials -------------------------------------------------------------------------


def run_trial(n, dist="random", seed=0, variant="cmp", algo="fg", instrument=True,
              check_output=True, check_structure=False):
    """One sort of a generated input; returns ``(CostReport, Verdict or None)``."""
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}")
    if algo not in ALGOS:
        raise UsageError(f"unknown algorithm {algo!r}")
    keys = generate(dist, n, seed)
    arr = MeteredArray(keys, tags=instrument)
    t0 = time.perf_counter_ns()
    aux = 0
    if algo == "fg":
        sort_array(arr, variant=variant, check=check_structure)
    elif algo == "heapsort":
        binary_heapsort(arr)
    else:
        aux = top_down_mergesort(arr)
    elapsed = time.perf_counter_ns() - t0
    report = CostReport.from_array(arr, elapsed, distribution=dist, seed=seed,
                                   variant=variant, algo=algo)
    if aux:
        report.aside_peak = aux
    verdict = verify(keys, arr, in_place=algo != "mergesort") if check_output else None
    report.output = None
    return report, verdict


def run_suite(config, out=sys.stdout, csv=False):
    """Run every trial in ``config`` and stream one record per trial.

    ``config`` is an iterable of dicts with keys among ``n, dist, seed,
    variant, algo``.  Returns the list of ``(report, verdict)`` pairs.
    """
    results = []
    header_done = False
    for trial in config:
        report, verdict = run_trial(**trial)
        if csv:
            if not header_done:
                print(report.csv_header(), file=out)
                header_done = True
            print(report.to_csv(), file=out)
        else:
            print(report.to_line(), file=out)
        out.flush()
        results.append((report, verdict))
    return results


# -- derived constants and the baseline file ------------------------------------------


def c1_constant(comparisons, n):
    """Comparison slack over ``2 n log n`` in units of ``n (log n)**(4/5)``."""
    lg = math.log2(n)
    return (comparisons - 2 * n * lg) / (n * lg ** 0.8)


def c2_constant(moves, n):
    return moves / n


def measure_select(lengths=SELECT_LENGTHS, seed=0):
    """Worst comparisons/len and moves/len of selecting rank ceil(len/4) and the median."""
    c_sel = m_sel = 0.0
    rng = np.random.default_rng(seed)
    for length in lengths:
        keys = rng.permutation(length).tolist()
        for rank in (-(-length // 4), length // 2 + 1):
            arr = MeteredArray(keys, tags=False)
            select_rank(arr, 0, length, rank)
            c_sel = max(c_sel, arr.comparisons / length)
            m_sel = max(m_sel, arr.moves / length)
    return c_sel, m_sel


def record_baseline(path, n_list, dists=("random",), variants=("cmp",), seed=0,
                    select_lengths=SELECT_LENGTHS, log=None):
    entries = {}
    for dist in dists:
        for variant in variants:
            c1, c2 = {}, {}
            for n in n_list:
                report, verdict = run_trial(n, dist, seed, variant, "fg", instrument=False)
                if not verdict:
                    raise RuntimeError(f"n={n} {dist}/{variant}: {verdict}")
                c1[str(n)] = c1_constant(report.comparisons, n)
                c2[str(n)] = c2_constant(report.moves, n)
                if log:
                    print(report.to_line(), file=log)
            entries[f"{dist}/{variant}"] = {"C1": c1, "C2": c2}
    c_sel, m_sel = measure_select(select_lengths, seed)
    for entry in entries.values():
        entry["C_sel"] = c_sel
        entry["M_sel"] = m_sel
    data = {
        "meta": {
            "created": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
            "package_version": __version__,
            "python": platform.python_version(),
            "seed": seed,
            "select_lengths": list(select_lengths),
            "tolerance": REGRESSION_TOLERANCE,
        },
        "entries": entries,
    }
    validate_baseline(data)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return data


def validate_baseline(data):
    """Constants C2, C_sel and M_sel must be positive; C1 must be finite."""
    for key, entry in data["entries"].items():
        for name in ("C_sel", "M_sel"):
            if not entry[name] > 0:
                raise ValueError(f"{key}: {name} must be positive")
        for n, v in entry["C2"].items():
            if not v > 0:
                raise ValueError(f"{key}: C2 at n={n} must be positive")
        for n, v in entry["C1"].items():
            if not math.isfinite(v):
                raise ValueError(f"{key}: C1 at n={n} is not finite")


def load_baseline(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    validate_baseline(data)
    return data


def exceeds(new, recorded, tol=REGRESSION_TOLERANCE):
    """Regression test: ``new`` is more than ``tol`` above ``recorded``."""
    return new > recorded + tol * abs(recorded)


def check_baseline(path, seed=None, log=None, select_lengths=None):
    """Re-measure every recorded constant; returns a list of regression messages."""
    data = load_baseline(path)
    meta = data["meta"]
    seed = meta.get("seed", 0) if seed is None else seed
    lengths = select_lengths or tuple(meta.get("select_lengths", SELECT_LENGTHS))
    problems = []
    c_sel, m_sel = measure_select(lengths, seed)
    for key, entry in data["entries"].items():
        dist, variant = key.split("/")
        for n_str in entry["C2"]:
            n = int(n_str)
            report, verdict = run_trial(n, dist, seed, variant, "fg", instrument=False)
            if log:
                print(report.to_line(), file=log)
            if not verdict:
                problems.append(f"{key} n={n}: {verdict}")
            for name, new in (("C1", c1_constant(report.comparisons, n)),
                              ("C2", c2_constant(report.moves, n))):
                old = entry[name][n_str]
                if exceeds(new, old):
                    problems.append(f"{key} n={n}: {name} {new:.4f} exceeds recorded {old:.4f}")
        for name, new in (("C_sel", c_sel), ("M_sel", m_sel)):
            if exceeds(new, entry[name]):
                problems.append(f"{key}: {name} {new:.4f} exceeds recorded {entry[name]:.4f}")
    return problems


def flatness(reports):
    """max/min of moves per element over a sweep."""
    per_n = [r.moves / r.n for r in reports if r.n > 0]
    return max(per_n) / min(per_n)


# -- command line ----------------------------------------------------------------------


def _n_list(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _open_out(path):
    return open(path, "w", encoding="utf-8") if path and path != "-" else sys.stdout


def build_parser():
    p = argparse.ArgumentParser(prog="bench", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def trial_args(sp):
        sp.add_argument("--dist", default="random", help="distribution, e.g. random or sawtooth:64")
        sp.add_argument("--variant", choices=VARIANTS, default="cmp")
        sp.add_argument("--algo", choices=ALGOS, default="fg")
        sp.add_argument("--out", default="-", help="record file (default: stdout)")
        sp.add_argument("--csv", action="store_true", help="comma-separated rows")
        sp.add_argument("--no-verify", action="store_true", help="skip the oracle check")

    run = sub.add_parser("run", help="one trial")
    run.add_argument("--n", type=int, required=True)
    run.add_argument("--seed", type=int, default=0)
    trial_args(run)

    sweep = sub.add_parser("sweep", help="one trial per length")
    sweep.add_argument("--n-list", type=_n_list, required=True)
    sweep.add_argument("--seeds", type=_n_list, default=[0])
    sweep.add_argument("--max-ratio", type=float, default=None,
                       help="fail when max/min moves per element exceeds this")
    trial_args(sweep)

    base = sub.add_parser("baseline", help="record or check the constants file")
    base.add_argument("action", choices=("record", "check"))
    base.add_argument("--file", required=True)
    base.add_argument("--n-list", type=_n_list, default=[1 << 18])
    base.add_argument("--dist", action="append", default=None)
    base.add_argument("--variant", action="append", choices=VARIANTS, default=None)
    base.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("run", "sweep"):
            parse_dist(args.dist)
            if args.command == "run":
                config = [dict(n=args.n, dist=args.dist, seed=args.seed, variant=args.variant,
                               algo=args.algo, instrument=not args.no_verify,
                               check_output=not args.no_verify)]
            else:
                config = [dict(n=n, dist=args.dist, seed=s, variant=args.variant,
                               algo=args.algo, instrument=not args.no_verify,
                               check_output=not args.no_verify)
                          for n in args.n_list for s in args.seeds]
            out = _open_out(args.out)
            try:
                results = run_suite(config, out=out, csv=args.csv)
            finally:
                if out is not sys.stdout:
                    out.close()
            status = 0
            for report, verdict in results:
                if verdict is not None and not verdict:
                    print(f"n={report.n} seed={report.seed}: {verdict}", file=sys.stderr)
                    status = 1
            if args.command == "sweep" and len(results) > 1:
                ratio = flatness([r for r, _ in results])
                print(f"moves/n max/min ratio: {ratio:.4f}", file=sys.stderr)
                if args.max_ratio is not None and ratio > args.max_ratio:
                    status = 1
            return status
        if args.action == "record":
            record_baseline(args.file, args.n_list, tuple(args.dist or ["random"]),
                            tuple(args.variant or ["cmp"]), seed=args.seed, log=sys.stdout)
            print(f"recorded {args.file}", file=sys.stderr)
            return 0
        problems = check_baseline(args.file, log=sys.stdout)
        for msg in problems:
            print(f"REGRESSION {msg}", file=sys.stderr)
        return 1 if problems else 0
    except UsageError as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
