"""Pure-Python sparse integer elimination kernel.

This is the fallback backend for the hot loops of the exact linear algebra
layer.  The compiled extension ``ymh._accel._elim`` implements the same two
entry points with identical pivoting rules, so both backends return identical
results; only the speed differs.

All arithmetic is integer-preserving: rows are eliminated by reduced
cross-multiplication ``(p/g)*row - (a/g)*pivot_row`` followed by stripping the
row content (the gcd of its entries), so no rational entry is ever formed and
intermediate growth stays close to fraction-free elimination.

Pivoting for :func:`rank_of_rows` is Markowitz-style: among the nonzero
entries the pivot minimises ``(row_count-1)*(col_count-1)``, ties broken by
the lowest ``(row, col)`` pair, which makes ranks reproducible run to run.
Structural singletons (rows or columns with a single entry) are consumed
first since they contribute a pivot with no fill-in at all.
"""

from math import gcd


def _strip_content(row):
    """Divide a row dict in place by the gcd of its values."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for c in row:
            row[c] //= g


def _eliminate(row, a, prow, p, pc):
    """Replace ``row`` by ``(p/g)*row - (a/g)*prow``, skipping the pivot column.

    ``a`` is the entry of ``row`` in the pivot column ``pc`` (already popped
    by the caller), ``p`` the pivot value.  The result has no entry at ``pc``
    and is content-stripped.
    """
    g = gcd(p, a)
    pp = p // g
    aa = a // g
    if pp != 1:
        for c in row:
            row[c] *= pp
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
    """Exact rank over the rationals of the matrix with the given rows.

    ``rows`` is a sequence of ``{col: int}`` dicts with nonzero integer
    values; ``ncols`` is accepted for interface symmetry and unused.
    """
    mat = [dict(r) for r in rows if r]
    colmap = {}
    for i, r in enumerate(mat):
        for c in r:
            colmap.setdefault(c, set()).add(i)
    alive = set(range(len(mat)))
    rank = 0

    def drop_row(i):
        """Remove row i and all its column-index references."""
        alive.discard(i)
        for c in mat[i]:
            s = colmap.get(c)
            if s is not None:
                s.discard(i)
                if not s:
                    del colmap[c]
        mat[i] = {}

    def drop_column(c):
        """Delete column c from every row; rows going empty are dropped."""
        for i in colmap.pop(c, ()):
            row = mat[i]
            row.pop(c, None)
            if not row:
                alive.discard(i)

    while True:
        # Structural sweep: singleton rows and columns pivot with no fill.
        progress = True
        while progress:
            progress = False
            for i in sorted(alive):
                if len(mat[i]) == 1:
                    (c,) = mat[i]
                    s = colmap.get(c)
                    if s is not None:
                        s.discard(i)
                        if not s:
                            del colmap[c]
                    mat[i] = {}
                    alive.discard(i)
                    drop_column(c)
                    rank += 1
                    progress = True
            for c in sorted(colmap):
                s = colmap.get(c)
                if s is not None and len(s) == 1:
                    (i,) = s
                    del colmap[c]
                    mat[i].pop(c, None)
                    drop_row(i)
                    rank += 1
                    progress = True
        if not alive:
            return rank

        # Markowitz pivot search over rows grouped by entry count.
        by_len = {}
        for i in alive:
            by_len.setdefault(len(mat[i]), []).append(i)
        min_col = min(len(s) for s in colmap.values())
        best = None
        for length in sorted(by_len):
            bound = (length - 1) * (min_col - 1)
            if best is not None and best[0] <= bound:
                break
            for i in sorted(by_len[length]):
                for c in sorted(mat[i]):
                    cost = (length - 1) * (len(colmap[c]) - 1)
                    key = (cost, i, c)
                    if best is None or key < best:
                        best = key
        _, pr, pc = best

        prow = mat[pr]
        p = prow[pc]
        for i in sorted(colmap[pc]):
            if i == pr:
                continue
            row = mat[i]
            a = row.pop(pc)
            fresh = [c for c in prow if c != pc and c not in row]
            _eliminate(row, a, prow, p, pc)
            for c in fresh:
                if c in row:
                    colmap.setdefault(c, set()).add(i)
            for c in prow:
                if c != pc and c not in row:
                    s = colmap.get(c)
                    if s is not None:
                        s.discard(i)
                        if not s:
                            del colmap[c]
            if not row:
                alive.discard(i)
        del colmap[pc]
        prow.pop(pc, None)
        drop_row(pr)
        rank += 1


def echelon_insert(rows_by_pivot, vec):
    """Reduce ``vec`` against a forward echelon and insert the residual.

    ``rows_by_pivot`` maps a pivot column to a content-stripped integer row
    dict whose minimal column is the pivot.  ``vec`` is consumed.  Returns the
    pivot column of the inserted residual, or ``None`` when ``vec`` reduced to
    zero.  Insertion order determines the echelon, so callers get
    reproducible pivot sets by feeding vectors deterministically.
    """
    while vec:
        c = min(vec)
        prow = rows_by_pivot.get(c)
        if prow is None:
            _strip_content(vec)
            if vec[c] < 0:
                for k in vec:
                    vec[k] = -vec[k]
            rows_by_pivot[c] = vec
            return c
        _eliminate(vec, vec.pop(c), prow, prow[c], c)
    return None
