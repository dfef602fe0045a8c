"""Graded coefficient modules and their generator-action matrices.

A :class:`GradedModule` is a degree-indexed family of finite bases together
with one action matrix per generator and degree, ``A_i^(m): M_m -> M_{m+1}``.
Two algebra tags exist: ``"sv"`` (modules over the polynomial algebra on the
generators; the action matrices must commute) and ``"ym"`` (modules over the
enveloping algebra; the cubic relations must act by zero).  Both invariant
suites run at construction time, and dimension-0 components are explicit so
complexes assemble uniformly.

Constructors cover everything the homology engine consumes: the trivial
module, the polynomial algebra acting on itself, shifts, direct sums and
tensor products with the diagonal action, the symmetric algebra on the
quotient Lie algebra with the adjoint action (the Hochschild coefficient
module), its subalgebra on the degree >= 2 part with graded pieces, and the
generator space W(n) of that ideal realised as an explicit subquotient of
the polynomial-coefficient complex, validated degree by degree against its
closed-form Hilbert series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact_linalg import SparseMatrix, TaggedEchelon, rank, subquotient_basis
from .formal_series import w_hilbert, ym_hilbert
from .lie_engine import YMPresentation, pbw_basis

__all__ = [
    "GradedModule",
    "ModuleInvariantError",
    "direct_sum",
    "nonzerodivisor_check",
    "s_tym_adjoint_module",
    "shift",
    "sv_regular_module",
    "sym_adjoint_module",
    "tensor_module",
    "trivial_module",
    "w_module",
]


class ModuleInvariantError(AssertionError):
    """An action-matrix relation failed while building a module."""


class GradedModule:
    """Finite graded basis data with per-generator action matrices."""

    def __init__(
        self,
        algebra: str,
        n: int,
        min_degree: int,
        max_degree: int,
        dims: dict[int, int],
        actions: dict[tuple[int, int], SparseMatrix],
        name: str = "",
        check: bool = True,
    ):
        if algebra not in ("sv", "ym"):
            raise ValueError("algebra tag must be 'sv' or 'ym'")
        self.algebra = algebra
        self.n = n
        self.min_degree = min_degree
        self.max_degree = max_degree
        self.dims = {d: dims.get(d, 0) for d in range(min_degree, max_degree + 1)}
        self._actions = actions
        self.name = name
        if check:
            self.check_invariants()

    def dim(self, d: int) -> int:
        if d < self.min_degree or d > self.max_degree:
            return 0
        return self.dims.get(d, 0)

    def in_range(self, d: int) -> bool:
        return self.min_degree <= d <= self.max_degree

    def action(self, i: int, m: int) -> SparseMatrix:
        """A_i^(m): degree-m component to degree-(m+1) component."""
        if not 0 <= i < self.n:
            raise ValueError("generator index out of range")
        if not (self.in_range(m) and self.in_range(m + 1)):
            raise ValueError(f"action at degree {m} leaves the tracked range")
        hit = self._actions.get((i, m))
        if hit is None:
            return SparseMatrix(self.dim(m + 1), self.dim(m))
        return hit

    def q_matrix(self, m: int) -> SparseMatrix:
        """The quadric sum-of-squares action  M_m -> M_{m+2}."""
        out = SparseMatrix(self.dim(m + 2), self.dim(m))
        for i in range(self.n):
            out = out + self.action(i, m + 1) @ self.action(i, m)
        return out

    def check_invariants(self):
        if self.algebra == "sv":
            for m in range(self.min_degree, self.max_degree - 1):
                for i in range(self.n):
                    for j in range(i + 1, self.n):
                        lhs = self.action(j, m + 1) @ self.action(i, m)
                        rhs = self.action(i, m + 1) @ self.action(j, m)
                        if lhs != rhs:
                            raise ModuleInvariantError(
                                f"{self.name or 'module'}: actions of x{i+1}, x{j+1} "
                                f"fail to commute at degree {m}"
                            )
        else:
            for m in range(self.min_degree, self.max_degree - 2):
                for j in range(self.n):
                    acc = SparseMatrix(self.dim(m + 3), self.dim(m))
                    aj = self.action(j, m)
                    for i in range(self.n):
                        ai2, ai1, ai0 = (
                            self.action(i, m + 2),
                            self.action(i, m + 1),
                            self.action(i, m),
                        )
                        acc = acc + ai2 @ ai1 @ aj
                        acc = acc - (ai2 @ self.action(j, m + 1) @ ai0).scale(2)
                        acc = acc + self.action(j, m + 2) @ ai1 @ ai0
                    if not acc.is_zero():
                        raise ModuleInvariantError(
                            f"{self.name or 'module'}: cubic relation for x{j+1} "
                            f"does not act by zero at degree {m}"
                        )

    def __repr__(self):
        rng = f"[{self.min_degree}..{self.max_degree}]"
        return f"GradedModule({self.name or self.algebra}, n={self.n}, degrees {rng})"


# -- elementary constructors -------------------------------------------------


def trivial_module(n: int, max_degree: int = 0) -> GradedModule:
    """One line in degree 0 with all generator actions zero."""
    dims = {0: 1}
    return GradedModule("sv", n, 0, max(0, max_degree), dims, {}, name="trivial")


def _monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree d in lexicographic order."""
    if d == 0:
        return [(0,) * n]
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(tuple(prefix) + (left,))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e, k + 1)

    rec([], d, 0)
    return out


def sv_regular_module(n: int, max_degree: int) -> GradedModule:
    """The polynomial algebra on the generators acting on itself."""
    dims = {}
    index = {}
    for d in range(max_degree + 1):
        mons = _monomials(n, d)
        dims[d] = len(mons)
        index[d] = {m: k for k, m in enumerate(mons)}
    actions = {}
    for d in range(max_degree):
        mons = _monomials(n, d)
        for i in range(n):
            entries = {}
            for k, m in enumerate(mons):
                target = list(m)
                target[i] += 1
                entries[(index[d + 1][tuple(target)], k)] = 1
            actions[(i, d)] = SparseMatrix(dims[d + 1], dims[d], entries)
    return GradedModule("sv", n, 0, max_degree, dims, actions, name="sv-regular")


def shift(module: GradedModule, j: int) -> GradedModule:
    """Regrading with (M[j])_d = M_{d+j}."""
    dims = {d - j: v for d, v in module.dims.items()}
    actions = {(i, m - j): mat for (i, m), mat in module._actions.items()}
    return GradedModule(
        module.algebra,
        module.n,
        module.min_degree - j,
        module.max_degree - j,
        dims,
        actions,
        name=f"{module.name}[{j}]" if module.name else f"shift[{j}]",
        check=False,
    )


def direct_sum(a: GradedModule, b: GradedModule) -> GradedModule:
    """Degreewise direct sum (blocks of ``a`` first)."""
    if a.algebra != b.algebra or a.n != b.n:
        raise ValueError("incompatible module tags in direct sum")
    lo = min(a.min_degree, b.min_degree)
    hi = max(a.max_degree, b.max_degree)
    dims = {d: a.dim(d) + b.dim(d) for d in range(lo, hi + 1)}
    actions = {}
    for m in range(lo, hi):
        off_src, off_dst = a.dim(m), a.dim(m + 1)
        for i in range(a.n):
            entries = {}
            if a.in_range(m) and a.in_range(m + 1):
                entries.update(a.action(i, m).entries)
            if b.in_range(m) and b.in_range(m + 1):
                for (r, c), v in b.action(i, m).entries.items():
                    entries[(r + off_dst, c + off_src)] = v
            if entries:
                actions[(i, m)] = SparseMatrix(dims[m + 1], dims[m], entries)
    return GradedModule(a.algebra, a.n, lo, hi, dims, actions, name=f"{a.name}+{b.name}", check=False)


def tensor_module(a: GradedModule, b: GradedModule, name: str = "") -> GradedModule:
    """Tensor product with the diagonal action  x(u@v) = xu@v + u@xv.

    The degree-m basis enumerates pairs by ascending degree of the left
    factor, so dimensions are the convolution of the factor dimensions.
    """
    if a.algebra != b.algebra or a.n != b.n:
        raise ValueError("incompatible module tags in tensor product")
    lo = a.min_degree + b.min_degree
    hi = a.max_degree + b.max_degree
    dims = {}
    offsets: dict[int, dict[int, int]] = {}
    for m in range(lo, hi + 1):
        total = 0
        offs = {}
        for da in range(a.min_degree, a.max_degree + 1):
            db = m - da
            if b.in_range(db) and a.dim(da) and b.dim(db):
                offs[da] = total
                total += a.dim(da) * b.dim(db)
        dims[m] = total
        offsets[m] = offs
    actions = {}
    for m in range(lo, hi):
        for i in range(a.n):
            entries = {}
            for da, off in offsets[m].items():
                db = m - da
                na, nb = a.dim(da), b.dim(db)
                # left-factor action: (da, db) -> (da+1, db)
                if a.in_range(da + 1) and (da + 1) in offsets[m + 1]:
                    dst = offsets[m + 1][da + 1]
                    for (r, c), v in a.action(i, da).entries.items():
                        for kb in range(nb):
                            entries[(dst + r * nb + kb, off + c * nb + kb)] = v
                # right-factor action: (da, db) -> (da, db+1)
                if b.in_range(db + 1) and da in offsets[m + 1]:
                    dst = offsets[m + 1][da]
                    nb2 = b.dim(db + 1)
                    for (r, c), v in b.action(i, db).entries.items():
                        for ka in range(na):
                            key = (dst + ka * nb2 + r, off + ka * nb + c)
                            w = entries.get(key, 0) + v
                            if w:
                                entries[key] = w
                            else:
                                entries.pop(key, None)
            if entries:
                actions[(i, m)] = SparseMatrix(dims[m + 1], dims[m], entries)
    mod = GradedModule(a.algebra, a.n, lo, hi, dims, actions, name=name or f"{a.name}(x){b.name}", check=False)
    # convolution of dimensions is forced by the construction; spot-assert it
    for m in range(lo, hi + 1):
        conv = sum(a.dim(da) * b.dim(m - da) for da in range(a.min_degree, a.max_degree + 1) if b.in_range(m - da))
        if conv != mod.dim(m):
            raise ModuleInvariantError("tensor dimensions are not the convolution")
    return mod


# -- adjoint modules over the enveloping algebra ------------------------------


def _adjoint_action_matrices(
    p: YMPresentation, bases: dict[int, list], max_degree: int
) -> dict[tuple[int, int], SparseMatrix]:
    """Derivation extension of the adjoint action to sorted monomials."""
    index = {d: {m: k for k, m in enumerate(bases[d])} for d in bases}
    actions: dict[tuple[int, int], SparseMatrix] = {}
    for m in range(max_degree):
        if m not in bases or (m + 1) not in bases:
            continue
        target_index = index[m + 1]
        for i in range(p.n):
            entries: dict[tuple[int, int], Fraction] = {}
            for col, mono in enumerate(bases[m]):
                for t, factor in enumerate(mono):
                    rest = mono[:t] + mono[t + 1 :]
                    deg, idx = factor
                    for w, c in p.generator_bracket(i, deg, idx).items():
                        new = tuple(sorted(rest + ((deg + 1, w),)))
                        row = target_index.get(new)
                        if row is None:
                            raise ModuleInvariantError(
                                "adjoint action left the monomial basis"
                            )
                        key = (row, col)
                        s = entries.get(key, 0) + c
                        if s:
                            entries[key] = s
                        else:
                            del entries[key]
            actions[(i, m)] = SparseMatrix(len(bases[m + 1]), len(bases[m]), entries)
    return actions


def sym_adjoint_module(p: YMPresentation, max_degree: int, check: bool = True) -> GradedModule:
    """Symmetric algebra on the quotient Lie algebra with the adjoint action.

    This is the coefficient module whose homology table is the Hochschild
    homology of the enveloping algebra.  Dimensions equal the coefficients of
    the algebra's Hilbert series (a consequence of the sorted-monomial basis),
    and the degree-0 component is the trivial line.
    """
    if max_degree > p.max_degree:
        raise ValueError("module degree exceeds the presentation range")
    bases = {d: pbw_basis(p, d) for d in range(max_degree + 1)}
    dims = {d: len(bases[d]) for d in bases}
    expected = ym_hilbert(p.n, max_degree).integer_coeffs()
    for d in range(max_degree + 1):
        if dims[d] != expected[d]:
            raise ModuleInvariantError("sorted-monomial count disagrees with the Hilbert series")
    actions = _adjoint_action_matrices(p, bases, max_degree)
    return GradedModule("ym", p.n, 0, max_degree, dims, actions, name=f"sym-adjoint({p.n})", check=check)


def _restricted_monomials(p: YMPresentation, d: int, min_factor_degree: int, factors: int | None):
    """Sorted monomials of total degree d, factors of degree >= bound."""
    ordered = []
    for deg in range(min_factor_degree, d + 1):
        ordered.extend((deg, i) for i in range(p.dim(deg)))
    out = []

    def rec(prefix, start, remaining):
        if remaining == 0:
            if factors is None or len(prefix) == factors:
                out.append(tuple(prefix))
            return
        if factors is not None and len(prefix) >= factors:
            return
        for pos in range(start, len(ordered)):
            deg, _ = ordered[pos]
            if deg > remaining:
                continue
            prefix.append(ordered[pos])
            rec(prefix, pos, remaining - deg)
            prefix.pop()

    rec([], 0, d)
    return out


def s_tym_adjoint_module(
    p: YMPresentation, max_degree: int, factors: int | None = None, check: bool = True
) -> GradedModule:
    """Symmetric algebra on the degree >= 2 Lie ideal (optionally one graded piece).

    The ideal is preserved by bracketing with generators, so the sorted
    monomials in its basis span a genuine submodule of the full symmetric
    algebra; ``factors=i`` selects the piece with exactly i factors.
    """
    if max_degree > p.max_degree:
        raise ValueError("module degree exceeds the presentation range")
    bases = {d: _restricted_monomials(p, d, 2, factors) for d in range(max_degree + 1)}
    dims = {d: len(bases[d]) for d in bases}
    actions = _adjoint_action_matrices(p, bases, max_degree)
    piece = "" if factors is None else f"^({factors})"
    name = f"s{piece}-tym({p.n})"
    return GradedModule("ym", p.n, 0, max_degree, dims, actions, name=name, check=check)


# -- the generator space of the free Lie ideal --------------------------------


@dataclass
class _WDegree:
    lifts: list[dict[int, Fraction]]
    reduce: object
    ambient_cols: int


def _w_ambient_index(n: int, mono_index: dict, z: tuple[int, ...], j: int) -> int:
    return mono_index[z] * n + j


def w_module(n: int, max_degree: int, check: bool = True) -> GradedModule:
    """The generator space of the degree >= 2 free Lie ideal, as a subquotient.

    Realised inside (polynomials of degree m-1) tensor (generators): the
    subspace is spanned by the multiples of the antisymmetric pair vectors
    ``z x_i (x) x_j - z x_j (x) x_i`` (these span the kernel of the
    multiplication map), and the quotient is the image of the middle Koszul
    differential.  Lifted bases are produced degree by degree with the
    deterministic subquotient machinery; the generator actions are computed
    on lifts and reduced, well-definedness being guaranteed because the
    quotient span is multiplication-stable (asserted entrywise below).

    Dimensions are validated against the closed-form series and the quadric
    sum of squares is checked to act by zero; either failure aborts.
    """
    if n < 2:
        raise ValueError("need at least two generators")
    expected = w_hilbert(n, max_degree).integer_coeffs()
    mons = {d: _monomials(n, d) for d in range(max(0, max_degree - 1) + 1)}
    midx = {d: {m: k for k, m in enumerate(mons[d])} for d in mons}

    def pair_vector(m: int, z: tuple[int, ...], i: int, j: int) -> dict[int, int]:
        zi = list(z)
        zi[i] += 1
        zj = list(z)
        zj[j] += 1
        return {
            _w_ambient_index(n, midx[m - 1], tuple(zi), j): 1,
            _w_ambient_index(n, midx[m - 1], tuple(zj), i): -1,
        }

    def boundary_vector(m: int, z: tuple[int, ...], i: int) -> dict[int, int]:
        vec: dict[int, int] = {}
        for j in range(n):
            zjj = list(z)
            zjj[j] += 2
            key = _w_ambient_index(n, midx[m - 1], tuple(zjj), i)
            vec[key] = vec.get(key, 0) + 1
            zij = list(z)
            zij[i] += 1
            zij[j] += 1
            key = _w_ambient_index(n, midx[m - 1], tuple(zij), j)
            vec[key] = vec.get(key, 0) - 1
        return {k: v for k, v in vec.items() if v}

    degrees: dict[int, _WDegree] = {}
    dims: dict[int, int] = {}
    for m in range(2, max_degree + 1):
        sub = [
            pair_vector(m, z, i, j)
            for z in mons[m - 2]
            for i, j in combinations(range(n), 2)
        ]
        quot = [boundary_vector(m, z, i) for z in mons.get(m - 3, []) for i in range(n)] if m >= 3 else []
        lifts, reduce = subquotient_basis(len(mons[m - 1]) * n, sub, quot)
        degrees[m] = _WDegree(lifts, reduce, len(mons[m - 1]) * n)
        dims[m] = len(lifts)
        if dims[m] != expected[m]:
            raise ModuleInvariantError(
                f"generator-space dimension {dims[m]} at degree {m} "
                f"disagrees with the series value {expected[m]}"
            )
        if check and m >= 3 and m + 1 <= max_degree:
            # multiplication stability of the quotient span, entry by entry:
            # x_k . d2(z (x) x_i) must equal d2((x_k z) (x) x_i)
            for z in mons[m - 3][: min(len(mons[m - 3]), 6)]:
                for i in range(n):
                    v = boundary_vector(m, z, i)
                    for k in range(n):
                        shifted = _shift_w_vector(n, midx, m, v, k)
                        zk = list(z)
                        zk[k] += 1
                        if shifted != boundary_vector(m + 1, tuple(zk), i):
                            raise ModuleInvariantError("quotient span is not multiplication-stable")

    actions: dict[tuple[int, int], SparseMatrix] = {}
    for m in range(2, max_degree):
        data = degrees[m]
        nxt = degrees[m + 1]
        for k in range(n):
            entries = {}
            for col, lift in enumerate(data.lifts):
                shifted = _shift_w_vector(n, midx, m, lift, k)
                for row, v in nxt.reduce(shifted).items():
                    entries[(row, col)] = v
            actions[(k, m)] = SparseMatrix(dims[m + 1], dims[m], entries)

    dims.setdefault(2, 0)
    module = GradedModule("sv", n, 2, max(2, max_degree), dims, actions, name=f"w({n})", check=check)
    if check:
        for m in range(2, max_degree - 1):
            if not module.q_matrix(m).is_zero():
                raise ModuleInvariantError("the quadric does not act by zero on the generator space")
    return module


def _shift_w_vector(n, midx, m, vec, k):
    """Multiply an ambient vector at degree m by the k-th generator."""
    out: dict[int, Fraction] = {}
    rev = {v: key for key, v in midx[m - 1].items()}
    for key, v in vec.items():
        z = rev[key // n]
        j = key % n
        zk = list(z)
        zk[k] += 1
        nk = midx[m][tuple(zk)] * n + j
        out[nk] = out.get(nk, 0) + v
    return {kk: vv for kk, vv in out.items() if vv}


# -- distinguished-element diagnostics ----------------------------------------


@dataclass
class InjectivityReport:
    module: str
    element: str
    per_degree: dict[int, bool] = field(default_factory=dict)
    kernel_dims: dict[int, int] = field(default_factory=dict)

    @property
    def all_injective(self) -> bool:
        return all(self.per_degree.values())

    @property
    def all_zero(self) -> bool:
        """True when the element acts by zero wherever the source is nonzero."""
        return all(
            self.kernel_dims[d] == dims for d, dims in self._source_dims.items()
        )

    _source_dims: dict[int, int] = field(default_factory=dict)


def nonzerodivisor_check(module: GradedModule, element, max_degree: int | None = None) -> InjectivityReport:
    """Degreewise injectivity of a generator or of the quadric on a module.

    ``element`` is either ``("x", i)`` for the i-th generator or ``"q"`` for
    the sum of squares.  For each degree in range the kernel dimension of the
    action map is computed exactly (0 means injective at that degree).
    """
    if element == "q":
        label, deg_step = "q", 2

        def matrix(m):
            return module.q_matrix(m)

    else:
        _, i = element
        label, deg_step = f"x{i+1}", 1

        def matrix(m):
            return module.action(i, m)

    hi = module.max_degree if max_degree is None else min(max_degree, module.max_degree)
    report = InjectivityReport(module.name, label)
    for m in range(module.min_degree, hi - deg_step + 1):
        mat = matrix(m)
        k = mat.cols - rank(mat)
        report.per_degree[m] = k == 0
        report.kernel_dims[m] = k
        report._source_dims[m] = mat.cols
    return report
