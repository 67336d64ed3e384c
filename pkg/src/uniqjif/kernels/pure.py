"""Pure-Python counting kernel (fallback when the compiled one is absent)."""

from __future__ import annotations


def pair_group_counts(group_ids, item_ids, n_groups, n_items):
    """Per-group pair totals and distinct-item counts.

    ``group_ids`` / ``item_ids`` are parallel sequences of ints with
    0 <= group < n_groups and 0 <= item < n_items.  Returns two lists of
    length ``n_groups``: total pairs per group, and the number of distinct
    items per group.  ``n_items`` is only needed by the compiled twin (it
    sizes the hash key space) but is kept here for interface parity.
    """
    counts = [0] * n_groups
    distinct = [0] * n_groups
    seen: list[set | None] = [None] * n_groups
    try:
        groups = group_ids.tolist()
        items = item_ids.tolist()
    except AttributeError:
        groups, items = list(group_ids), list(item_ids)
    for g, it in zip(groups, items):
        if not 0 <= g < n_groups:
            raise ValueError(f"group id {g} outside [0, {n_groups})")
        if not 0 <= it < n_items:
            raise ValueError(f"item id {it} outside [0, {n_items})")
        counts[g] += 1
        bucket = seen[g]
        if bucket is None:
            bucket = seen[g] = set()
        if it not in bucket:
            bucket.add(it)
            distinct[g] += 1
    return counts, distinct
