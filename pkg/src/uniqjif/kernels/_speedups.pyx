# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled counting kernel; behavioural twin of uniqjif.kernels.pure.

The hot loop runs without the GIL, so callers may fan partitions out over
threads and get real parallelism.
"""

from cpython cimport array
import array

from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_set cimport unordered_set


def pair_group_counts(group_ids, item_ids, Py_ssize_t n_groups, Py_ssize_t n_items):
    """Per-group pair totals and distinct-item counts.

    Same contract as the pure kernel: parallel int sequences (anything
    exposing a contiguous signed 64-bit buffer, e.g. ``array.array('q')``),
    returns (counts, distinct) lists of length ``n_groups``.
    """
    cdef const int64_t[::1] groups = group_ids
    cdef const int64_t[::1] items = item_ids
    cdef Py_ssize_t n = groups.shape[0]
    if items.shape[0] != n:
        raise ValueError("group_ids and item_ids must have equal length")
    if n_groups < 0 or n_items < 0:
        raise ValueError("n_groups and n_items must be non-negative")

    cdef array.array counts_arr = array.array("q", bytes(8 * max(n_groups, 1)))
    cdef array.array distinct_arr = array.array("q", bytes(8 * max(n_groups, 1)))
    cdef int64_t[::1] counts = counts_arr
    cdef int64_t[::1] distinct = distinct_arr

    cdef unordered_set[uint64_t] seen
    seen.reserve(<size_t>n)

    cdef Py_ssize_t i, bad = -1
    cdef int64_t g, it
    cdef uint64_t key
    with nogil:
        for i in range(n):
            g = groups[i]
            it = items[i]
            if g < 0 or g >= n_groups or it < 0 or it >= n_items:
                bad = i
                break
            counts[g] += 1
            key = (<uint64_t>g) * (<uint64_t>n_items) + <uint64_t>it
            if seen.insert(key).second:
                distinct[g] += 1
    if bad >= 0:
        raise ValueError(
            f"id out of range at index {bad}: "
            f"({groups[bad]}, {items[bad]}) vs ({n_groups}, {n_items})"
        )
    return counts_arr.tolist()[:n_groups], distinct_arr.tolist()[:n_groups]
