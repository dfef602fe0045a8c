"""Exact sparse linear algebra over arbitrary-precision rationals.

Scalars are :class:`fractions.Fraction` (always lowest terms, positive
denominator, no rounding anywhere); vectors are sparse ``{index: Fraction}``
dicts and matrices carry explicit row/column counts so degenerate shapes such
as ``0 x m`` are first-class values.

Rank goes through the elimination backend in :mod:`ymh._accel` (compiled when
available), which runs integer-preserving Gaussian elimination with
Markowitz-style pivoting, ties broken by the lowest ``(row, col)`` pair.
Bases, solutions and subquotient lifts come from :class:`TaggedEchelon`, an
insertion-ordered forward echelon that tracks how each stored row was formed;
feeding it vectors in a fixed order makes every derived basis reproducible
bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from ._accel import backend_name, echelon_insert, rank_of_rows

Scalar = Fraction
Vector = dict[int, Fraction]

__all__ = [
    "Scalar",
    "SparseMatrix",
    "TaggedEchelon",
    "backend_name",
    "kernel_basis",
    "rank",
    "solve_in_span",
    "subquotient_basis",
]


def _to_int_vector(vec: Mapping[int, Fraction | int]) -> dict[int, int]:
    """Clear denominators and strip content; rank and span are preserved."""
    out, _ = _to_int_vector_scaled(vec)
    return out


def _to_int_vector_scaled(vec: Mapping[int, Fraction | int]) -> tuple[dict[int, int], Fraction]:
    """Primitive integer vector plus the factor restoring the original.

    Returns ``(ivec, mult)`` with ``vec == mult * ivec`` exactly.
    """
    denom = 1
    for v in vec.values():
        d = getattr(v, "denominator", 1)
        denom = denom * d // gcd(denom, d)
    out = {}
    g = 0
    for c, v in vec.items():
        w = int(v * denom)
        if w:
            out[c] = w
            g = gcd(g, w)
    if g > 1:
        for c in out:
            out[c] //= g
    return out, Fraction(g, denom) if g else Fraction(0)


class SparseMatrix:
    """An immutable-by-convention sparse matrix of exact rationals.

    ``entries`` maps ``(row, col)`` to a nonzero Fraction.  ``rows``/``cols``
    are tracked explicitly; zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], Fraction | int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
                fv = Fraction(v)
                if fv:
                    self.entries[(r, c)] = fv

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Fraction | int]]) -> "SparseMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[(i, j)] = v
        return cls(rows, len(columns), entries)

    def column(self, j: int) -> Vector:
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def row_dicts(self) -> list[dict[int, Fraction]]:
        rows: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        m = SparseMatrix(self.rows, self.cols)
        m.entries = out
        return m

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, s: Fraction | int) -> "SparseMatrix":
        m = SparseMatrix(self.rows, self.cols)
        if s:
            m.entries = {k: v * s for k, v in self.entries.items()}
        return m

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        rows_of_other: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            rows_of_other.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), v in self.entries.items():
            hits = rows_of_other.get(k)
            if not hits:
                continue
            for c, w in hits:
                key = (r, c)
                s = out.get(key, 0) + v * w
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        m = SparseMatrix(self.rows, other.cols)
        m.entries = out
        return m

    def apply(self, vec: Mapping[int, Fraction | int]) -> Vector:
        """Matrix-vector product (vector indexed by columns)."""
        cols_of_self: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in self.entries.items():
            cols_of_self.setdefault(c, []).append((r, v))
        out: Vector = {}
        for c, x in vec.items():
            if not x:
                continue
            for r, v in cols_of_self.get(c, ()):
                s = out.get(r, 0) + v * x
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def rank(m: SparseMatrix) -> int:
    """Exact rank of ``m`` over the rationals."""
    rows = [_to_int_vector(r) for r in m.row_dicts()]
    return rank_of_rows([r for r in rows if r], m.cols)


def rank_of_vectors(vectors: Iterable[Mapping[int, Fraction | int]]) -> int:
    """Rank of a family of sparse vectors (dimension of their span)."""
    rows = [_to_int_vector(v) for v in vectors]
    return rank_of_rows([r for r in rows if r], 0)


class TaggedEchelon:
    """Insertion-ordered forward echelon with provenance tags.

    Each stored row is an integer, content-stripped vector whose minimal
    index is its pivot, together with a rational tag recording the row as an
    exact combination of the tagged vectors inserted so far.  Untagged
    insertions (``tag=None``) enter the span but carry no provenance, which
    is how a quotient subspace is folded in before lift candidates.
    """

    def __init__(self):
        self._rows: dict[int, dict[int, int]] = {}
        self._tags: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def _reduce(self, vec: Mapping[int, Fraction | int]):
        """Fully reduce ``vec``; returns (residual, alpha, combo).

        ``alpha * vec == sum(combo[p] * row_p) + residual`` holds exactly with
        rational ``alpha`` and ``combo``; the residual is integer and has no
        entry in a pivot column.
        """
        work, mult = _to_int_vector_scaled(vec)
        alpha = Fraction(1) / mult if mult else Fraction(1)
        combo: dict[int, Fraction] = {}
        pending = sorted(work)
        i = 0
        while i < len(pending):
            c = pending[i]
            i += 1
            a = work.get(c)
            if not a:
                continue
            prow = self._rows.get(c)
            if prow is None:
                continue
            p = prow[c]
            g = gcd(p, a)
            pp, aa = p // g, a // g
            if pp != 1:
                for k in work:
                    work[k] *= pp
                alpha *= pp
                for k in combo:
                    combo[k] *= pp
            combo[c] = combo.get(c, Fraction(0)) + aa
            added = []
            for k, v in prow.items():
                if k == c:
                    continue
                w = work.get(k, 0) - aa * v
                if w:
                    if k not in work and k > c:
                        added.append(k)
                    work[k] = w
                else:
                    work.pop(k, None)
            del work[c]
            if added:
                pending = pending[:i] + sorted(added + pending[i:])
        return work, alpha, combo

    def reduce_to_residual(self, vec: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        """Canonical representative of ``vec`` modulo the span (no pivot columns)."""
        work, alpha, _ = self._reduce(vec)
        inv = Fraction(1) / alpha
        return {c: v * inv for c, v in work.items()}

    def contains(self, vec: Mapping[int, Fraction | int]) -> bool:
        work, _, _ = self._reduce(vec)
        return not work

    def insert(self, vec: Mapping[int, Fraction | int], tag: dict[int, Fraction] | None = None) -> int | None:
        """Insert ``vec``; returns its pivot column or None if dependent.

        The stored tag expresses the stored row exactly in terms of the tags
        supplied so far (rows folded in with ``tag=None`` contribute nothing).
        """
        work, alpha, combo = self._reduce(vec)
        if not work:
            return None
        newtag: dict[int, Fraction] = {}
        if tag:
            for k, v in tag.items():
                newtag[k] = Fraction(v) * alpha
        for p, coef in combo.items():
            told = self._tags.get(p)
            if told:
                for k, v in told.items():
                    w = newtag.get(k, Fraction(0)) - coef * v
                    if w:
                        newtag[k] = w
                    else:
                        newtag.pop(k, None)
        # content-strip the residual; the tag absorbs the factor exactly
        g = 0
        for v in work.values():
            g = gcd(g, v)
        pivot = min(work)
        if work[pivot] < 0:
            g = -g
        if g not in (0, 1):
            for c in work:
                work[c] //= g
            inv = Fraction(1, 1) / g
            newtag = {k: v * inv for k, v in newtag.items()}
        self._rows[pivot] = work
        self._tags[pivot] = newtag
        return pivot

    def combination_for(self, vec: Mapping[int, Fraction | int]) -> dict[int, Fraction] | None:
        """Express ``vec`` over the tagged insertions; None if outside the span."""
        work, alpha, combo = self._reduce(vec)
        if work:
            return None
        out: dict[int, Fraction] = {}
        inv = Fraction(1) / alpha
        for p, coef in combo.items():
            for k, v in self._tags.get(p, {}).items():
                w = out.get(k, Fraction(0)) + coef * v * inv
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out


def kernel_basis(m: SparseMatrix) -> list[Vector]:
    """A basis of ``{v : m v = 0}`` with ``len == cols - rank`` (deterministic).

    Columns are fed left to right into a tagged echelon; every column that
    reduces to zero yields one kernel vector supported on the columns seen so
    far, so the result is reproducible across runs and backends.
    """
    ech = TaggedEchelon()
    out: list[Vector] = []
    for j, col in enumerate(m.columns()):
        if not col:
            out.append({j: Fraction(1)})
            continue
        combo = ech.combination_for(col)
        if combo is None:
            ech.insert(col, {j: Fraction(1)})
        else:
            vec: Vector = {j: Fraction(1)}
            for k, v in combo.items():
                if v:
                    vec[k] = -v
            out.append(vec)
    return out


def solve_in_span(basis: Sequence[Mapping[int, Fraction | int]], target: Mapping[int, Fraction | int]) -> list[Fraction] | None:
    """Coefficients expressing ``target`` over ``basis``, or None if outside.

    "Not representable" is an ordinary outcome (None), not an exception; the
    reconstruction identity ``sum(c_i * basis_i) == target`` holds exactly
    when coefficients are returned.
    """
    ech = TaggedEchelon()
    for k, vec in enumerate(basis):
        ech.insert(vec, {k: Fraction(1)})
    combo = ech.combination_for(target)
    if combo is None:
        return None
    return [combo.get(k, Fraction(0)) for k in range(len(basis))]


class SubquotientError(ValueError):
    """Raised when the would-be quotient span escapes the subspace span."""


def subquotient_basis(
    ambient_dim: int,
    sub_span: Sequence[Mapping[int, Fraction | int]],
    quot_span: Sequence[Mapping[int, Fraction | int]],
) -> tuple[list[Vector], Callable[[Mapping[int, Fraction | int]], dict[int, Fraction]]]:
    """Lifted basis and reduction map for ``span(sub) / span(quot)``.

    Checks ``span(quot) <= span(sub)`` (a violation means the quotient is not
    well defined and signals an upstream bug).  The lifts are the first
    vectors of ``sub_span`` that stay independent modulo the quotient, and
    ``reduce(v)`` returns the exact coordinates of a sub-vector's class over
    the lifted basis.  Zero-dimensional results are explicit (empty basis).
    """
    sub_ech = TaggedEchelon()
    for vec in sub_span:
        sub_ech.insert(vec)
    for vec in quot_span:
        if not sub_ech.contains(vec):
            raise SubquotientError("quotient span is not contained in the subspace span")

    ech = TaggedEchelon()
    for vec in quot_span:
        ech.insert(vec, tag=None)
    lifts: list[Vector] = []
    for vec in sub_span:
        idx = len(lifts)
        if ech.insert(vec, {idx: Fraction(1)}) is not None:
            lifts.append({c: Fraction(v) for c, v in vec.items() if v})

    def reduce(v: Mapping[int, Fraction | int]) -> dict[int, Fraction]:
        combo = ech.combination_for(v)
        if combo is None:
            raise SubquotientError("vector outside the subspace span")
        return {k: c for k, c in combo.items() if c}

    return lifts, reduce
