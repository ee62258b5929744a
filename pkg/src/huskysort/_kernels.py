"""Compiled dual-array kernels.

Every kernel works on a pair of equal-length int64 arrays: ``keys`` and
``refs``.  ``refs`` holds the positions of the payload elements, so a move
of ``keys[i]`` is always mirrored by the same move of ``refs[i]``; callers
apply ``refs`` to the real payload afterwards.

Instrumentation goes into a small int64 ``counters`` array, indexed by the
constants below.  Accounting rules:

* comparing two array elements costs 2 accesses, comparing against a value
  already held in a local (pivot, element being inserted) costs 1;
* a swap touches both arrays: 4 accesses each;
* a copy moves one (key, ref) pair: 2 accesses each.
"""

import numpy as np
from numba import njit

COMPARISONS = 0
SWAPS = 1
ACCESSES = 2
COPIES = 3
DEPTH_HITS = 4
N_COUNTERS = 5

_STACK_SIZE = 128


@njit(cache=True)
def _swap(keys, refs, i, j, counters):
    t = keys[i]
    keys[i] = keys[j]
    keys[j] = t
    r = refs[i]
    refs[i] = refs[j]
    refs[j] = r
    counters[SWAPS] += 1
    counters[ACCESSES] += 8


@njit(cache=True)
def insertion_sort(keys, refs, lo, hi, counters):
    for i in range(lo + 1, hi):
        k = keys[i]
        r = refs[i]
        counters[ACCESSES] += 2
        j = i
        while j > lo:
            counters[COMPARISONS] += 1
            counters[ACCESSES] += 1
            if k < keys[j - 1]:
                keys[j] = keys[j - 1]
                refs[j] = refs[j - 1]
                counters[COPIES] += 1
                counters[ACCESSES] += 4
                j -= 1
            else:
                break
        if j != i:
            keys[j] = k
            refs[j] = r
            counters[ACCESSES] += 2


@njit(cache=True)
def _sift_down(keys, refs, lo, root, n, counters):
    while True:
        child = 2 * root + 1
        if child >= n:
            return
        if child + 1 < n:
            counters[COMPARISONS] += 1
            counters[ACCESSES] += 2
            if keys[lo + child] < keys[lo + child + 1]:
                child += 1
        counters[COMPARISONS] += 1
        counters[ACCESSES] += 2
        if keys[lo + root] < keys[lo + child]:
            _swap(keys, refs, lo + root, lo + child, counters)
            root = child
        else:
            return


@njit(cache=True)
def heapsort(keys, refs, lo, hi, counters):
    n = hi - lo
    for start in range(n // 2 - 1, -1, -1):
        _sift_down(keys, refs, lo, start, n, counters)
    for end in range(n - 1, 0, -1):
        _swap(keys, refs, lo, lo + end, counters)
        _sift_down(keys, refs, lo, 0, end, counters)


@njit(cache=True)
def partition(keys, refs, lo, hi, counters):
    """Median-of-three partition of ``[lo, hi)``; needs ``hi - lo >= 3``.

    Returns ``p`` with ``keys[lo:p] <= keys[p] <= keys[p+1:hi]``.
    """
    mid = lo + (hi - lo) // 2
    last = hi - 1
    counters[COMPARISONS] += 3
    counters[ACCESSES] += 6
    if keys[mid] < keys[lo]:
        _swap(keys, refs, lo, mid, counters)
    if keys[last] < keys[lo]:
        _swap(keys, refs, lo, last, counters)
    if keys[last] < keys[mid]:
        _swap(keys, refs, mid, last, counters)
    if hi - lo == 3:
        return mid
    # keys[lo] and keys[last] now act as sentinels for the two scans
    _swap(keys, refs, mid, last - 1, counters)
    pivot = keys[last - 1]
    counters[ACCESSES] += 1
    i = lo
    j = last - 1
    while True:
        i += 1
        counters[COMPARISONS] += 1
        counters[ACCESSES] += 1
        while keys[i] < pivot:
            i += 1
            counters[COMPARISONS] += 1
            counters[ACCESSES] += 1
        j -= 1
        counters[COMPARISONS] += 1
        counters[ACCESSES] += 1
        while pivot < keys[j]:
            j -= 1
            counters[COMPARISONS] += 1
            counters[ACCESSES] += 1
        if i >= j:
            break
        _swap(keys, refs, i, j, counters)
    _swap(keys, refs, i, last - 1, counters)
    return i


@njit(cache=True)
def introsort(keys, refs, lo, hi, depth_limit, cutoff, counters):
    stack_lo = np.empty(_STACK_SIZE, dtype=np.int64)
    stack_hi = np.empty(_STACK_SIZE, dtype=np.int64)
    stack_depth = np.empty(_STACK_SIZE, dtype=np.int64)
    sp = 0
    depth = depth_limit
    while True:
        while hi - lo > cutoff and hi - lo >= 3:
            if depth == 0:
                counters[DEPTH_HITS] += 1
                heapsort(keys, refs, lo, hi, counters)
                hi = lo
                break
            depth -= 1
            p = partition(keys, refs, lo, hi, counters)
            # recurse into the smaller side first so the stack stays O(lg n)
            if p - lo < hi - p - 1:
                stack_lo[sp] = p + 1
                stack_hi[sp] = hi
                stack_depth[sp] = depth
                hi = p
            else:
                stack_lo[sp] = lo
                stack_hi[sp] = p
                stack_depth[sp] = depth
                lo = p + 1
            sp += 1
        if hi - lo > 1:
            insertion_sort(keys, refs, lo, hi, counters)
        if sp == 0:
            return
        sp -= 1
        lo = stack_lo[sp]
        hi = stack_hi[sp]
        depth = stack_depth[sp]


@njit(cache=True)
def _merge(keys, refs, aux_keys, aux_refs, lo, mid, hi, counters):
    for i in range(lo, hi):
        aux_keys[i] = keys[i]
        aux_refs[i] = refs[i]
    counters[COPIES] += hi - lo
    counters[ACCESSES] += 4 * (hi - lo)
    i = lo
    j = mid
    for k in range(lo, hi):
        if i >= mid:
            keys[k] = aux_keys[j]
            refs[k] = aux_refs[j]
            j += 1
        elif j >= hi:
            keys[k] = aux_keys[i]
            refs[k] = aux_refs[i]
            i += 1
        else:
            counters[COMPARISONS] += 1
            counters[ACCESSES] += 2
            if aux_keys[j] < aux_keys[i]:
                keys[k] = aux_keys[j]
                refs[k] = aux_refs[j]
                j += 1
            else:
                keys[k] = aux_keys[i]
                refs[k] = aux_refs[i]
                i += 1
        counters[COPIES] += 1
        counters[ACCESSES] += 4


@njit(cache=True)
def merge_sort(keys, refs, lo, hi, cutoff, counters):
    """Stable bottom-up merge sort over ``[lo, hi)``."""
    n = hi - lo
    if n < 2:
        return
    block = max(cutoff, 1)
    for start in range(lo, hi, block):
        insertion_sort(keys, refs, start, min(start + block, hi), counters)
    if block >= n:
        return
    aux_keys = np.empty_like(keys)
    aux_refs = np.empty_like(refs)
    width = block
    while width < n:
        for start in range(lo, hi - width, 2 * width):
            mid = start + width
            end = min(start + 2 * width, hi)
            counters[COMPARISONS] += 1
            counters[ACCESSES] += 2
            if keys[mid] < keys[mid - 1]:
                _merge(keys, refs, aux_keys, aux_refs, start, mid, end, counters)
        width *= 2


@njit(cache=True)
def _count_merge(a, aux, lo, mid, hi):
    for i in range(lo, hi):
        aux[i] = a[i]
    i = lo
    j = mid
    count = 0
    for k in range(lo, hi):
        if i >= mid:
            a[k] = aux[j]
            j += 1
        elif j >= hi:
            a[k] = aux[i]
            i += 1
        elif aux[j] < aux[i]:
            # aux[j] jumps over every element still waiting on the left
            count += mid - i
            a[k] = aux[j]
            j += 1
        else:
            a[k] = aux[i]
            i += 1
    return count


@njit(cache=True)
def count_inversions(a):
    """Number of pairs ``i < j`` with ``a[i] > a[j]``; sorts ``a`` as a side effect."""
    n = a.shape[0]
    aux = np.empty_like(a)
    total = 0
    width = 1
    while width < n:
        for lo in range(0, n - width, 2 * width):
            total += _count_merge(a, aux, lo, lo + width, min(lo + 2 * width, n))
        width *= 2
    return total
