"""Pure-Python versions of the hot loops in :mod:`segalsets._kernels`.

Signatures and results match the compiled module exactly; the test suite
runs both against each other.
"""
import numpy as np


def fiber_join(rows, keys, offsets, items):
    """Extend each row by every item in the CSR group selected by its key.

    ``rows`` is an ``(R, c)`` int64 array and ``keys[r]`` selects the group
    ``items[offsets[k]:offsets[k+1]]``.  Returns the ``(R', c+1)`` array of
    extended rows, in row-major order of (row, item).
    """
    R, c = rows.shape
    out = []
    for r in range(R):
        k = keys[r]
        prefix = rows[r].tolist()
        for p in range(offsets[k], offsets[k + 1]):
            out.append(prefix + [int(items[p])])
    if not out:
        return np.empty((0, c + 1), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def first_repeat(keys):
    """Return ``(i, j)`` where ``j`` is the first position repeating an earlier key ``i``.

    ``(-1, -1)`` when all keys are distinct.
    """
    seen = {}
    for j, k in enumerate(keys.tolist()):
        i = seen.get(k)
        if i is not None:
            return i, j
        seen[k] = j
    return -1, -1


def count_triples(a, b, c, na, nb, nc):
    """Count occurrences of each ``(a[k], b[k], c[k])``; returns a dict keyed by triples."""
    counts = {}
    for x, y, z in zip(a.tolist(), b.tolist(), c.tolist()):
        counts[(x, y, z)] = counts.get((x, y, z), 0) + 1
    return counts
