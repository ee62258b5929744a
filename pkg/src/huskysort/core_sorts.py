"""Instrumented sorting kernels.

Two families live here:

* dual-array sorts (``dual_*``) that order a key array of signed 64-bit
  integers and carry a payload sequence along with every key move;
* plain object sorts (``payload_insertion_sort``, ``stable_adaptive_merge``,
  ``dual_pivot_quicksort``) that compare payload elements directly with
  their natural ordering.

All of them update a :class:`SortStats` when one is given.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import _kernels as K

#: Ranges of at most this many pairs are finished by insertion sort.
INSERTION_CUTOFF = 16


@dataclass
class SortStats:
    """Operation counters for one or more sort calls.

    ``array_accesses`` counts element reads and writes on every array the
    algorithm touches (keys and payload for the dual sorts).  Comparisons
    against a cached pivot count a single access, so only
    ``array_accesses >= comparisons`` is guaranteed.
    """

    comparisons: int = 0
    swaps: int = 0
    array_accesses: int = 0
    copies: int = 0
    cleanup_ran: bool = False
    depth_limit_hits: int = 0

    def add_counters(self, counters: np.ndarray) -> None:
        self.comparisons += int(counters[K.COMPARISONS])
        self.swaps += int(counters[K.SWAPS])
        self.array_accesses += int(counters[K.ACCESSES])
        self.copies += int(counters[K.COPIES])
        self.depth_limit_hits += int(counters[K.DEPTH_HITS])

    def merge(self, other: "SortStats") -> None:
        for f in fields(self):
            if f.name == "cleanup_ran":
                self.cleanup_ran = self.cleanup_ran or other.cleanup_ran
            else:
                setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def floor_lg(n: int) -> int:
    """Return ``floor(log2(n))`` for ``n >= 1``."""
    if n < 1:
        raise ValueError(f"floor_lg needs a positive count, got {n}")
    return n.bit_length() - 1


def _bounds(seq, lo, hi):
    n = len(seq)
    if hi is None:
        hi = n
    if not 0 <= lo <= hi <= n:
        raise IndexError(f"bad range [{lo}, {hi}) for length {n}")
    return lo, hi


def apply_permutation(payload, refs, lo: int = 0) -> None:
    """Reorder ``payload[lo:lo+len(refs)]`` so slot ``i`` receives ``payload[refs[i]]``."""
    hi = lo + len(refs)
    if isinstance(payload, np.ndarray):
        payload[lo:hi] = payload[refs]
    else:
        old = payload
        payload[lo:hi] = [old[i] for i in refs.tolist()]


def _run_dual(kernel, keys, payload, lo, hi, stats, *args):
    lo, hi = _bounds(keys, lo, hi)
    if payload is not None and len(payload) != len(keys):
        raise ValueError("keys and payload must have the same length")
    n = hi - lo
    counters = np.zeros(K.N_COUNTERS, dtype=np.int64)
    if n > 1:
        if isinstance(keys, np.ndarray) and keys.dtype == np.int64:
            segment = keys[lo:hi]
        else:
            segment = np.array(keys[lo:hi], dtype=np.int64)
        refs = np.arange(lo, hi, dtype=np.int64)
        result = kernel(segment, refs, 0, n, *args, counters)
        if not (isinstance(keys, np.ndarray) and keys.dtype == np.int64):
            keys[lo:hi] = segment if isinstance(keys, np.ndarray) else segment.tolist()
        if payload is not None:
            apply_permutation(payload, refs, lo)
    else:
        result = lo
    if stats is not None:
        stats.add_counters(counters)
    return result


def dual_introsort(keys, payload, lo=0, hi=None, depth_limit=None, stats=None,
                   cutoff=INSERTION_CUTOFF):
    """Introsort ``keys[lo:hi]`` (signed order) and co-permute ``payload``.

    ``depth_limit`` defaults to ``2 * floor_lg(hi - lo)``; when a range
    exhausts it, the range is finished by :func:`dual_heapsort`.
    """
    lo, hi = _bounds(keys, lo, hi)
    if depth_limit is None:
        depth_limit = 2 * floor_lg(hi - lo) if hi - lo > 0 else 0
    _run_dual(K.introsort, keys, payload, lo, hi, stats, depth_limit, cutoff)


def dual_partition(keys, payload, lo=0, hi=None, stats=None) -> int:
    """Partition ``keys[lo:hi]`` around a median-of-three pivot.

    Returns the pivot's final index ``p``: everything left of it is ``<=``
    and everything right of it is ``>=`` ``keys[p]``.
    """
    lo, hi = _bounds(keys, lo, hi)
    if hi - lo < 3:
        # too small for median-of-three; ordering the range is a valid partition
        _run_dual(K.insertion_sort, keys, payload, lo, hi, stats)
        return lo
    return int(_run_dual(K.partition, keys, payload, lo, hi, stats)) + lo


def dual_heapsort(keys, payload, lo=0, hi=None, stats=None) -> None:
    _run_dual(K.heapsort, keys, payload, lo, hi, stats)


def dual_insertion_sort(keys, payload, lo=0, hi=None, stats=None) -> None:
    _run_dual(K.insertion_sort, keys, payload, lo, hi, stats)


def dual_merge_sort(keys, payload, lo=0, hi=None, stats=None,
                    cutoff=INSERTION_CUTOFF) -> None:
    """Stable merge sort of ``keys[lo:hi]``, co-permuting ``payload``.

    Pairs with equal keys keep their input order.
    """
    _run_dual(K.merge_sort, keys, payload, lo, hi, stats, cutoff)


# ---------------------------------------------------------------------------
# object sorts


def payload_insertion_sort(payload, lo=0, hi=None, stats=None) -> None:
    """Stable straight insertion sort; ``n - 1 + inversions`` comparisons at most."""
    lo, hi = _bounds(payload, lo, hi)
    a = payload
    comparisons = copies = 0
    for i in range(lo + 1, hi):
        x = a[i]
        j = i
        while j > lo:
            comparisons += 1
            y = a[j - 1]
            if x < y:
                a[j] = y
                copies += 1
                j -= 1
            else:
                break
        if j != i:
            a[j] = x
    if stats is not None:
        stats.comparisons += comparisons
        stats.copies += copies
        stats.array_accesses += comparisons + 2 * copies + 2 * (hi - lo)


def find_runs(payload, lo=0, hi=None, stats=None) -> list[int]:
    """Boundaries of maximal nondecreasing runs: ``[lo, b1, ..., hi]``."""
    lo, hi = _bounds(payload, lo, hi)
    a = payload
    bounds = [lo]
    for i in range(lo + 1, hi):
        if a[i] < a[i - 1]:
            bounds.append(i)
    if hi > lo:
        bounds.append(hi)
    if stats is not None:
        steps = max(hi - lo - 1, 0)
        stats.comparisons += steps
        stats.array_accesses += 2 * steps
    return bounds


def stable_adaptive_merge(payload, lo=0, hi=None, stats=None) -> None:
    """Natural bottom-up merge sort.

    Detects the maximal nondecreasing runs, then merges neighbouring runs
    pairwise, level by level, until one run remains.  Stable, and linear on
    input that is already sorted.
    """
    lo, hi = _bounds(payload, lo, hi)
    a = payload
    bounds = find_runs(a, lo, hi, stats)
    comparisons = copies = 0
    while len(bounds) > 2:
        merged = [bounds[0]]
        for r in range(0, len(bounds) - 2, 2):
            b0, b1, b2 = bounds[r], bounds[r + 1], bounds[r + 2]
            comparisons += 1
            if a[b1] < a[b1 - 1]:
                left = a[b0:b1]
                nl = b1 - b0
                i = 0
                j = b1
                k = b0
                x = left[0]
                y = a[j]
                while True:
                    comparisons += 1
                    if y < x:
                        a[k] = y
                        j += 1
                        k += 1
                        if j == b2:
                            break
                        y = a[j]
                    else:
                        a[k] = x
                        i += 1
                        k += 1
                        if i == nl:
                            break
                        x = left[i]
                if i < nl:
                    a[k:b2] = left[i:]
                copies += nl + (b2 - b0)
            merged.append(b2)
        if (len(bounds) - 1) % 2:
            merged.append(bounds[-1])
        bounds = merged
    if stats is not None:
        stats.comparisons += comparisons
        stats.copies += copies
        stats.array_accesses += 2 * comparisons + 2 * copies


def dual_pivot_quicksort(payload, lo=0, hi=None, stats=None) -> None:
    """Yaroslavskiy's dual-pivot quicksort on the payload's natural order.

    The outermost elements of each range serve as the two pivots; no
    sampling and no small-range cutoff, which is the variant whose average
    cost is 1.9 n ln n comparisons and 0.6 n ln n swaps to leading order.
    Recursion always continues into the largest part, so the stack stays
    logarithmic even though sorted input degrades to quadratic time.
    """
    lo, hi = _bounds(payload, lo, hi)
    a = payload
    comparisons = swaps = 0
    stack = [(lo, hi - 1)]
    while stack:
        left, right = stack.pop()
        while right > left:
            comparisons += 1
            if a[right] < a[left]:
                a[left], a[right] = a[right], a[left]
                swaps += 1
            p = a[left]
            q = a[right]
            l = left + 1
            g = right - 1
            k = l
            while k <= g:
                x = a[k]
                comparisons += 1
                if x < p:
                    a[k] = a[l]
                    a[l] = x
                    swaps += 1
                    l += 1
                else:
                    comparisons += 1
                    if not x < q:
                        while True:
                            comparisons += 1
                            if q < a[g] and k < g:
                                g -= 1
                            else:
                                break
                        a[k] = a[g]
                        a[g] = x
                        swaps += 1
                        g -= 1
                        x = a[k]
                        comparisons += 1
                        if x < p:
                            a[k] = a[l]
                            a[l] = x
                            swaps += 1
                            l += 1
                k += 1
            l -= 1
            g += 1
            a[left] = a[l]
            a[l] = p
            a[right] = a[g]
            a[g] = q
            swaps += 2
            parts = sorted(((l - 1 - left, left, l - 1),
                            (g - 1 - l - 1, l + 1, g - 1),
                            (right - g - 1, g + 1, right)))
            stack.append(parts[0][1:])
            stack.append(parts[1][1:])
            left, right = parts[2][1:]
    if stats is not None:
        stats.comparisons += comparisons
        stats.swaps += swaps
        stats.array_accesses += 2 * comparisons + 4 * swaps
