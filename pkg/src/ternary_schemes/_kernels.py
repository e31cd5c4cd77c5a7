"""Compiled inner loops for isomorphism grouping of label rows.

Rows are label vectors (RGS form).  A permutation of positions is given in
gather form ``g``: the image row is ``row[g]``, renormalised to an RGS.
"""

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def rows_minimal_under(rows, gathers, n_labels):
    """``out[r]`` is True iff ``rows[r]`` is <= every renormalised image."""
    n_rows, width = rows.shape
    out = np.ones(n_rows, dtype=np.bool_)
    relabel = np.empty(n_labels, dtype=np.int64)
    for r in range(n_rows):
        for p in range(gathers.shape[0]):
            relabel[:] = -1
            nxt = 0
            for j in range(width):
                v = rows[r, gathers[p, j]]
                if relabel[v] < 0:
                    relabel[v] = nxt
                    nxt += 1
                w = relabel[v]
                if w < rows[r, j]:
                    out[r] = False
                    break
                if w > rows[r, j]:
                    break
            if not out[r]:
                break
    return out


@numba.njit(cache=True, nogil=True)
def rows_min_image(rows, gathers, n_labels):
    """Lexicographically least renormalised image of each row."""
    n_rows, width = rows.shape
    best = np.empty((n_rows, width), dtype=np.int8)
    cand = np.empty(width, dtype=np.int8)
    relabel = np.empty(n_labels, dtype=np.int64)
    for r in range(n_rows):
        for p in range(gathers.shape[0]):
            relabel[:] = -1
            nxt = 0
            for j in range(width):
                v = rows[r, gathers[p, j]]
                if relabel[v] < 0:
                    relabel[v] = nxt
                    nxt += 1
                cand[j] = relabel[v]
            smaller = p == 0
            if not smaller:
                for j in range(width):
                    if cand[j] != best[r, j]:
                        smaller = cand[j] < best[r, j]
                        break
            if smaller:
                best[r, :] = cand
    return best
