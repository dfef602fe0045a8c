# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse integer elimination kernel.

Mirror of ``ymh._accel._elim_py`` with identical pivoting rules, so both
backends produce identical ranks and echelons.  Entries are Python ints
(arbitrary precision is required for fraction-free elimination); the speedup
comes from compiled loop and dict traffic, which dominates on the sparse
matrices this package produces.
"""

from math import gcd


cdef void _strip_content(dict row):
    cdef object g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] = row[c] // g


cdef void _eliminate(dict row, object a, dict prow, object p, object pc):
    cdef object g = gcd(p, a)
    cdef object pp = p // g
    cdef object aa = a // g
    cdef object c, v, w
    if pp != 1:
        for c in row:
            row[c] = row[c] * pp
    for c, v in prow.items():
        if c == pc:
            continue
        w = row.get(c, 0) - aa * v
        if w:
            row[c] = w
        else:
            row.pop(c, None)
    _strip_content(row)


def rank_of_rows(rows, ncols):
    """Exact rank over the rationals; see the pure backend for the contract."""
    cdef list mat = [dict(r) for r in rows if r]
    cdef dict colmap = {}
    cdef Py_ssize_t i
    cdef object c, s
    for i in range(len(mat)):
        for c in (<dict>mat[i]):
            s = colmap.get(c)
            if s is None:
                colmap[c] = {i}
            else:
                (<set>s).add(i)
    cdef set alive = set(range(len(mat)))
    cdef long long rank = 0
    cdef dict row, prow, by_len
    cdef bint progress
    cdef object best, key
    cdef long long cost, bound, length, min_col
    cdef object p, a, pc
    cdef Py_ssize_t pr

    while True:
        progress = True
        while progress:
            progress = False
            for i in sorted(alive):
                row = <dict>mat[i]
                if len(row) == 1:
                    for c in row:
                        break
                    s = colmap.get(c)
                    if s is not None:
                        (<set>s).discard(i)
                        if not (<set>s):
                            del colmap[c]
                    mat[i] = {}
                    alive.discard(i)
                    for j in colmap.pop(c, ()):
                        row = <dict>mat[j]
                        row.pop(c, None)
                        if not row:
                            alive.discard(j)
                    rank += 1
                    progress = True
            for c in sorted(colmap):
                s = colmap.get(c)
                if s is not None and len(<set>s) == 1:
                    for i in (<set>s):
                        break
                    del colmap[c]
                    row = <dict>mat[i]
                    row.pop(c, None)
                    alive.discard(i)
                    for cc in row:
                        s = colmap.get(cc)
                        if s is not None:
                            (<set>s).discard(i)
                            if not (<set>s):
                                del colmap[cc]
                    mat[i] = {}
                    rank += 1
                    progress = True
        if not alive:
            return rank

        by_len = {}
        for i in alive:
            length = len(<dict>mat[i])
            if length in by_len:
                (<list>by_len[length]).append(i)
            else:
                by_len[length] = [i]
        min_col = min(len(<set>v) for v in colmap.values())
        best = None
        for length in sorted(by_len):
            bound = (length - 1) * (min_col - 1)
            if best is not None and best[0] <= bound:
                break
            for i in sorted(<list>by_len[length]):
                row = <dict>mat[i]
                for c in sorted(row):
                    cost = (length - 1) * (len(<set>colmap[c]) - 1)
                    key = (cost, i, c)
                    if best is None or key < best:
                        best = key
        pr = best[1]
        pc = best[2]

        prow = <dict>mat[pr]
        p = prow[pc]
        for i in sorted(<set>colmap[pc]):
            if i == pr:
                continue
            row = <dict>mat[i]
            a = row.pop(pc)
            fresh = [c for c in prow if c != pc and c not in row]
            _eliminate(row, a, prow, p, pc)
            for c in fresh:
                if c in row:
                    s = colmap.get(c)
                    if s is None:
                        colmap[c] = {i}
                    else:
                        (<set>s).add(i)
            for c in prow:
                if c != pc and c not in row:
                    s = colmap.get(c)
                    if s is not None:
                        (<set>s).discard(i)
                        if not (<set>s):
                            del colmap[c]
            if not row:
                alive.discard(i)
        del colmap[pc]
        prow.pop(pc, None)
        alive.discard(pr)
        for c in prow:
            s = colmap.get(c)
            if s is not None:
                (<set>s).discard(pr)
                if not (<set>s):
                    del colmap[c]
        mat[pr] = {}
        rank += 1


def echelon_insert(dict rows_by_pivot, dict vec):
    """Forward-echelon insertion; see the pure backend for the contract."""
    cdef object c, hit
    cdef dict prow
    while vec:
        c = min(vec)
        hit = rows_by_pivot.get(c)
        if hit is None:
            _strip_content(vec)
            if vec[c] < 0:
                for k in vec:
                    vec[k] = -vec[k]
            rows_by_pivot[c] = vec
            return c
        prow = <dict>hit
        _eliminate(vec, vec.pop(c), prow, prow[c], c)
    return None
