"""Degree-wise construction of the Yang-Mills Lie algebra and its envelope.

The free Lie algebra on n ordered generators is realised on a classical Hall
family: monomials are binary bracketing trees, ordered by degree first and by
construction index inside a degree, and ``[u, v]`` is a basis tree exactly
when ``u < v`` and the left factor of ``v`` is ``<= u``.  Arbitrary brackets
are straightened into this basis by the usual Jacobi rewriting, which is the
single primitive everything else consumes.

The Yang-Mills quotient divides by the ideal generated by the n cubic
elements ``sum_i [x_i, [x_i, x_j]]``.  Its degree-d piece is computed by the
recursion  I_3 = span(relations),  I_{d+1} = [V, I_d]:  by the Jacobi
identity any bracket ``[w, r]`` with ``w`` of degree >= 2 is a combination of
brackets ``[x_i, [.., r]]`` with deeper generator prefixes, so left
multiplication by generators already sweeps out the whole ideal.  The
quotient basis keeps the Hall monomials, in order, whose classes stay
independent modulo the ideal, so structure constants are reproducible.

Poincare-Birkhoff-Witt bases of the enveloping algebra (sorted monomials in
the quotient basis) and the tensor-algebra realisation of the associative
quotient live here too; their degree-wise dimensions must agree, and both
must match the closed-form Hilbert series, which the presentation builder
enforces as a hard failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exact_linalg import TaggedEchelon, rank_of_vectors
from ._accel import rank_of_rows
from .formal_series import TruncatedSeries, ym_hilbert

Tree = object  # int (generator index) or (Tree, Tree)


def mobius(m: int) -> int:
    """Moebius function by trial factorization."""
    if m == 1:
        return 1
    result = 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def witt_dimension(n: int, d: int) -> int:
    """Dimension of the degree-d part of the free Lie algebra on n letters."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += mobius(e) * n ** (d // e)
    return total // d


def tree_degree(t: Tree) -> int:
    return 1 if isinstance(t, int) else tree_degree(t[0]) + tree_degree(t[1])


def tree_label(t: Tree) -> str:
    if isinstance(t, int):
        return f"x{t + 1}"
    return f"[{tree_label(t[0])},{tree_label(t[1])}]"


class HallBasis:
    """The Hall family on n generators up to a fixed degree."""

    def __init__(self, n: int, max_degree: int):
        if n < 2:
            raise ValueError("need at least two generators")
        if max_degree < 1:
            raise ValueError("max_degree must be positive")
        self.n = n
        self.max_degree = max_degree
        self.by_degree: list[list[Tree]] = [[]]  # index 0 unused
        self._order: dict[Tree, tuple[int, int]] = {}
        self._index: dict[Tree, int] = {}
        self._bracket_cache: dict[tuple[Tree, Tree], dict[Tree, int]] = {}
        gens = list(range(n))
        self.by_degree.append(gens)
        for i, g in enumerate(gens):
            self._order[g] = (1, i)
            self._index[g] = i
        for d in range(2, max_degree + 1):
            level: list[Tree] = []
            for a in range(1, d):
                b = d - a
                for u in self.by_degree[a]:
                    for v in self.by_degree[b]:
                        if self._order[u] < self._order[v] and self._admissible_right(u, v):
                            level.append((u, v))
            self.by_degree.append(level)
            for i, t in enumerate(level):
                self._order[t] = (d, i)
                self._index[t] = i
            if len(level) != witt_dimension(n, d):
                raise AssertionError(
                    f"Hall count {len(level)} != Witt dimension {witt_dimension(n, d)} at degree {d}"
                )

    def _admissible_right(self, u: Tree, v: Tree) -> bool:
        if isinstance(v, int):
            return True
        return self._order[v[0]] <= self._order[u]

    def monomials(self, d: int) -> list[Tree]:
        if not 1 <= d <= self.max_degree:
            raise ValueError(f"degree {d} outside the built range 1..{self.max_degree}")
        return self.by_degree[d]

    def index(self, t: Tree) -> int:
        return self._index[t]

    def bracket_trees(self, u: Tree, v: Tree) -> dict[Tree, int]:
        """Straighten [u, v] into the Hall basis (integer coefficients)."""
        key = (u, v)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        if u == v:
            out: dict[Tree, int] = {}
        else:
            ou, ov = self._order[u], self._order[v]
            if ou > ov:
                out = {t: -c for t, c in self.bracket_trees(v, u).items()}
            elif self._admissible_right(u, v):
                out = {(u, v): 1}
            else:
                a, b = v
                out = {}
                for t, c in self.bracket_trees(u, a).items():
                    for t2, c2 in self.bracket_trees(t, b).items():
                        w = out.get(t2, 0) + c * c2
                        if w:
                            out[t2] = w
                        else:
                            del out[t2]
                for t, c in self.bracket_trees(u, b).items():
                    for t2, c2 in self.bracket_trees(a, t).items():
                        w = out.get(t2, 0) + c * c2
                        if w:
                            out[t2] = w
                        else:
                            del out[t2]
        self._bracket_cache[key] = out
        return out


@dataclass
class LieElement:
    """A homogeneous element of the free Lie algebra in Hall coordinates."""

    degree: int
    coords: dict[int, Fraction]

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degrees")
        out = dict(self.coords)
        for k, v in other.coords.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                del out[k]
        return LieElement(self.degree, out)

    def scale(self, s: Fraction | int) -> "LieElement":
        if not s:
            return LieElement(self.degree, {})
        return LieElement(self.degree, {k: v * s for k, v in self.coords.items()})


def generator(hall: HallBasis, i: int) -> LieElement:
    if not 0 <= i < hall.n:
        raise ValueError(f"generator index {i} out of range")
    return LieElement(1, {i: Fraction(1)})


def free_bracket(hall: HallBasis, a: LieElement, b: LieElement) -> LieElement:
    """Bilinear extension of the straightened bracket of Hall monomials."""
    d = a.degree + b.degree
    mons_a = hall.monomials(a.degree)
    mons_b = hall.monomials(b.degree)
    out: dict[int, Fraction] = {}
    for ia, ca in a.coords.items():
        u = mons_a[ia]
        for ib, cb in b.coords.items():
            for t, c in hall.bracket_trees(u, mons_b[ib]).items():
                k = hall.index(t)
                w = out.get(k, 0) + ca * cb * c
                if w:
                    out[k] = w
                else:
                    del out[k]
    return LieElement(d, out)


def relation_elements(hall: HallBasis) -> list[LieElement]:
    """The defining cubic elements  r_j = sum_i [x_i, [x_i, x_j]]."""
    out = []
    for j in range(hall.n):
        r = LieElement(3, {})
        for i in range(hall.n):
            inner = free_bracket(hall, generator(hall, i), generator(hall, j))
            r = r + free_bracket(hall, generator(hall, i), inner)
        out.append(r)
    return out


def _pbw_dims_match_series(dims: dict[int, int], n: int, max_degree: int) -> bool:
    """Check  prod_d (1 - t^d)^(-dims[d])  ==  ym_hilbert(n)  mod t^(D+1)."""
    series = TruncatedSeries.one(max_degree)
    for d in range(1, max_degree + 1):
        factor = TruncatedSeries(max_degree)
        factor.coeffs[0] = Fraction(1)
        if d <= max_degree:
            factor.coeffs[d] = Fraction(-1)
        inv = factor.inverse()
        for _ in range(dims.get(d, 0)):
            series = series * inv
    return series == ym_hilbert(n, max_degree)


class PresentationError(AssertionError):
    """A structural inconsistency while building the quotient presentation."""


class YMPresentation:
    """Per-degree bases and structure constants of the Yang-Mills Lie algebra.

    ``basis[d]`` lists the indices of the kept Hall monomials of degree d and
    ``reduce_free`` rewrites any free-Lie coordinate vector into coordinates
    over their classes.  Structure constants are computed lazily and cached.
    """

    def __init__(self, n: int, max_degree: int, hall: HallBasis | None = None):
        if max_degree < 1:
            raise ValueError("max_degree must be positive")
        self.n = n
        self.max_degree = max_degree
        self.hall = hall if hall is not None else HallBasis(n, max_degree)
        self._ideal_echelon: dict[int, TaggedEchelon] = {}
        self.ideal_dims: dict[int, int] = {}
        self.basis: dict[int, list[int]] = {1: list(range(n))}
        # position of a kept monomial index inside basis[d]
        self._position: dict[int, dict[int, int]] = {1: {i: i for i in range(n)}}
        self._sc_cache: dict[tuple[int, int, int, int], dict[int, Fraction]] = {}
        self._gen_bracket_cache: dict[tuple[int, int, int], dict[int, Fraction]] = {}
        self._build()

    # -- construction ------------------------------------------------------

    def _build(self):
        n, D = self.n, self.max_degree
        ideal_basis: dict[int, list[LieElement]] = {}
        if D >= 3:
            rels = relation_elements(self.hall)
            ideal_basis[3] = self._independent(3, rels)
        for d in range(4, D + 1):
            span = []
            for b in ideal_basis.get(d - 1, []):
                for i in range(n):
                    span.append(free_bracket(self.hall, generator(self.hall, i), b))
            ideal_basis[d] = self._independent(d, span)
        for d in range(1, D + 1):
            ech = self._ideal_echelon.get(d)
            pivots = set(ech.pivots) if ech else set()
            self.ideal_dims[d] = len(pivots)
            if d >= 2:
                kept = [k for k in range(len(self.hall.monomials(d))) if k not in pivots]
                self.basis[d] = kept
                self._position[d] = {k: p for p, k in enumerate(kept)}
        if not _pbw_dims_match_series(self.dims(), n, D):
            raise PresentationError(
                "quotient dimensions disagree with the closed-form Hilbert series"
            )

    def _independent(self, d: int, elements: list[LieElement]) -> list[LieElement]:
        ech = self._ideal_echelon.setdefault(d, TaggedEchelon())
        kept = []
        for el in elements:
            if el.degree != d:
                raise ValueError("degree mismatch in ideal construction")
            if ech.insert(el.coords) is not None:
                kept.append(el)
        return kept

    # -- queries -----------------------------------------------------------

    def dim(self, d: int) -> int:
        if d < 1 or d > self.max_degree:
            raise ValueError(f"degree {d} outside tracked range")
        return len(self.basis.get(d, ()))

    def dims(self) -> dict[int, int]:
        return {d: self.dim(d) for d in range(1, self.max_degree + 1)}

    def basis_labels(self, d: int) -> list[str]:
        mons = self.hall.monomials(d)
        return [tree_label(mons[k]) for k in self.basis.get(d, ())]

    def ideal_component_dim(self, d: int) -> int:
        return self.ideal_dims.get(d, 0)

    def reduce_free(self, el: LieElement) -> dict[int, Fraction]:
        """Coordinates of the class of ``el`` over the kept-monomial basis."""
        d = el.degree
        if d > self.max_degree:
            raise ValueError("degree beyond tracked range")
        ech = self._ideal_echelon.get(d)
        coords = el.coords if ech is None else ech.reduce_to_residual(el.coords)
        pos = self._position.get(d, {})
        return {pos[k]: v for k, v in coords.items() if v}

    def bracket_basis(self, d1: int, i1: int, d2: int, i2: int) -> dict[int, Fraction]:
        """Structure constants: the bracket of two basis classes."""
        if d1 + d2 > self.max_degree:
            raise ValueError("bracket degree exceeds tracked range")
        key = (d1, i1, d2, i2)
        hit = self._sc_cache.get(key)
        if hit is not None:
            return hit
        if (d2, i2, d1, i1) in self._sc_cache:
            prior = self._sc_cache[(d2, i2, d1, i1)]
            out = {k: -v for k, v in prior.items()}
        else:
            u = self.hall.monomials(d1)[self.basis[d1][i1]]
            v = self.hall.monomials(d2)[self.basis[d2][i2]]
            expansion = LieElement(
                d1 + d2,
                {
                    self.hall.index(t): Fraction(c)
                    for t, c in self.hall.bracket_trees(u, v).items()
                },
            )
            out = self.reduce_free(expansion)
        self._sc_cache[key] = out
        return out

    def bracket(self, d1: int, a: dict[int, Fraction], d2: int, b: dict[int, Fraction]) -> dict[int, Fraction]:
        """Bracket of coordinate vectors over the quotient bases."""
        out: dict[int, Fraction] = {}
        for i1, c1 in a.items():
            for i2, c2 in b.items():
                for k, v in self.bracket_basis(d1, i1, d2, i2).items():
                    w = out.get(k, 0) + c1 * c2 * v
                    if w:
                        out[k] = w
                    else:
                        del out[k]
        return out

    def generator_bracket(self, i: int, d: int, idx: int) -> dict[int, Fraction]:
        """[x_i, b] for the idx-th basis class of degree d (cached)."""
        key = (i, d, idx)
        hit = self._gen_bracket_cache.get(key)
        if hit is None:
            hit = self.bracket_basis(1, i, d, idx)
            self._gen_bracket_cache[key] = hit
        return hit

    def relation_classes_vanish(self) -> bool:
        """The defining elements reduce to zero in the quotient."""
        if self.max_degree < 3:
            return True
        return all(not self.reduce_free(r) for r in relation_elements(self.hall))

    def jacobi_holds(self, max_total_degree: int | None = None) -> bool:
        """Jacobi identity on all basis triples up to a total degree."""
        bound = max_total_degree or self.max_degree
        bound = min(bound, self.max_degree)
        for d1 in range(1, bound - 1):
            for d2 in range(d1, bound - d1 + 1):
                for d3 in range(d2, bound - d1 - d2 + 1):
                    for i1 in range(self.dim(d1)):
                        a = {i1: Fraction(1)}
                        for i2 in range(self.dim(d2)):
                            b = {i2: Fraction(1)}
                            for i3 in range(self.dim(d3)):
                                c = {i3: Fraction(1)}
                                acc: dict[int, Fraction] = {}
                                for term in (
                                    self.bracket(d1 + d2, self.bracket(d1, a, d2, b), d3, c),
                                    self.bracket(d2 + d3, self.bracket(d2, b, d3, c), d1, a),
                                    self.bracket(d3 + d1, self.bracket(d3, c, d1, a), d2, b),
                                ):
                                    for k, v in term.items():
                                        w = acc.get(k, 0) + v
                                        if w:
                                            acc[k] = w
                                        else:
                                            del acc[k]
                                if acc:
                                    return False
        return True


_presentation_cache: dict[tuple[int, int], YMPresentation] = {}


def ym_presentation(n: int, max_degree: int) -> YMPresentation:
    """Build (and memoise) the quotient presentation through ``max_degree``."""
    key = (n, max_degree)
    if key not in _presentation_cache:
        _presentation_cache[key] = YMPresentation(n, max_degree)
    return _presentation_cache[key]


# -- enveloping algebra ------------------------------------------------------

PBWMonomial = tuple[tuple[int, int], ...]  # sorted tuple of (degree, index) basis ids


def pbw_basis(p: YMPresentation, d: int) -> list[PBWMonomial]:
    """Sorted monomials in the quotient basis with total degree d."""
    if d < 0 or d > p.max_degree:
        raise ValueError("degree outside tracked range")
    ordered: list[tuple[int, int]] = []
    for deg in range(1, d + 1):
        ordered.extend((deg, i) for i in range(p.dim(deg)))

    out: list[PBWMonomial] = []

    def extend(prefix: list[tuple[int, int]], start: int, remaining: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for pos in range(start, len(ordered)):
            deg, _ = ordered[pos]
            if deg > remaining:
                continue
            prefix.append(ordered[pos])
            extend(prefix, pos, remaining - deg)
            prefix.pop()

    extend([], 0, d)
    return out


def pbw_multiply_basis(
    p: YMPresentation, u: tuple[int, int], mono: PBWMonomial, _cache: dict | None = None
) -> dict[PBWMonomial, Fraction]:
    """Straightened product  u * mono  in the enveloping algebra.

    ``u`` is a basis id, ``mono`` a sorted monomial; the result is a
    combination of sorted monomials of total degree  deg(u) + deg(mono).
    """
    if _cache is None:
        _cache = p.__dict__.setdefault("_pbw_cache", {})
    key = (u, mono)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    if not mono or u <= mono[0]:
        out = {(u,) + mono: Fraction(1)}
    else:
        head, rest = mono[0], mono[1:]
        out = {}
        # u * head * rest = head * (u * rest) + [u, head] * rest
        for m2, c2 in pbw_multiply_basis(p, u, rest, _cache).items():
            for m3, c3 in pbw_multiply_basis(p, head, m2, _cache).items():
                w = out.get(m3, 0) + c2 * c3
                if w:
                    out[m3] = w
                else:
                    del out[m3]
        du, dh = u[0], head[0]
        for k, c in p.bracket_basis(du, u[1], dh, head[1]).items():
            for m3, c3 in pbw_multiply_basis(p, (du + dh, k), rest, _cache).items():
                w = out.get(m3, 0) + c * c3
                if w:
                    out[m3] = w
                else:
                    del out[m3]
    _cache[key] = out
    return out


def pbw_left_mult(p: YMPresentation, i: int, mono: PBWMonomial) -> dict[PBWMonomial, Fraction]:
    """Left multiplication by the i-th generator on a sorted monomial."""
    total = 1 + sum(deg for deg, _ in mono)
    if total > p.max_degree:
        raise ValueError("product degree exceeds tracked range")
    return pbw_multiply_basis(p, (1, i), mono)


def pbw_multiply_monomials(
    p: YMPresentation, a: PBWMonomial, b: PBWMonomial
) -> dict[PBWMonomial, Fraction]:
    """Straightened product of two sorted monomials."""
    out: dict[PBWMonomial, Fraction] = {b: Fraction(1)}
    for u in reversed(a):
        nxt: dict[PBWMonomial, Fraction] = {}
        for mono, c in out.items():
            for m2, c2 in pbw_multiply_basis(p, u, mono).items():
                w = nxt.get(m2, 0) + c * c2
                if w:
                    nxt[m2] = w
                else:
                    del nxt[m2]
        out = nxt
    return out


# -- associative (tensor algebra) realisation -------------------------------


class AssocComponent:
    """Degree-d component of the associative quotient of the tensor algebra.

    Words of length d in the generators, modulo every placement of the cubic
    relation space.  ``with_reduction=True`` keeps the echelon so arbitrary
    word vectors can be rewritten over the kept-word basis; dimension-only
    queries use the fast rank backend instead.
    """

    def __init__(self, n: int, d: int, with_reduction: bool = True):
        self.n = n
        self.d = d
        self._ech: TaggedEchelon | None = None
        if d < 3:
            self.dim = n**d
            self._kept = list(range(n**d))
            self._position = {w: w for w in self._kept}
            return
        vectors = self._relation_vectors()
        if with_reduction:
            ech = TaggedEchelon()
            for vec in vectors:
                ech.insert(vec)
            self._ech = ech
            pivots = set(ech.pivots)
            self._kept = [w for w in range(n**d) if w not in pivots]
            self.dim = len(self._kept)
            self._position = {w: pos for pos, w in enumerate(self._kept)}
        else:
            ideal_rank = rank_of_rows(vectors, n**d)
            self.dim = n**d - ideal_rank
            self._kept = []
            self._position = {}

    def _relation_vectors(self) -> list[dict[int, int]]:
        n, d = self.n, self.d
        out = []
        for a in range(d - 2):
            b = d - 3 - a
            for left in product(range(n), repeat=a):
                for right in product(range(n), repeat=b):
                    for j in range(n):
                        vec: dict[int, int] = {}
                        for i in range(n):
                            for word, coeff in (
                                (left + (i, i, j) + right, 1),
                                (left + (i, j, i) + right, -2),
                                (left + (j, i, i) + right, 1),
                            ):
                                w = self._encode(word)
                                s = vec.get(w, 0) + coeff
                                if s:
                                    vec[w] = s
                                else:
                                    del vec[w]
                        if vec:
                            out.append(vec)
        return out

    def _encode(self, word: tuple[int, ...]) -> int:
        w = 0
        for letter in word:
            w = w * self.n + letter
        return w

    def encode(self, word: tuple[int, ...]) -> int:
        if len(word) != self.d:
            raise ValueError("word length does not match the component degree")
        return self._encode(word)

    def reduce_word_vector(self, vec: dict[int, Fraction | int]) -> dict[int, Fraction]:
        """Coordinates over the kept-word basis (requires with_reduction)."""
        if self._ech is None:
            if self.d < 3:
                return {self._position[w]: Fraction(v) for w, v in vec.items() if v}
            raise ValueError("component was built without a reduction map")
        residual = self._ech.reduce_to_residual(vec)
        return {self._position[w]: v for w, v in residual.items() if v}


def assoc_component(n: int, d: int, with_reduction: bool = True) -> AssocComponent:
    """Basis-with-reduction (or dimension only) of the degree-d component."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return AssocComponent(n, d, with_reduction)
