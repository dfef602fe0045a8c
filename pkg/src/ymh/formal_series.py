"""Truncated formal power series over exact rationals.

Every closed-form Hilbert series the engine verifies against lives here: the
series of the Yang-Mills algebra YM(n), of the generator space W(n) of the
free Lie ideal, the cyclic-homology Euler characteristic, and the full
Hochschild/cyclic homology series in each homological degree, both for
n >= 3 and for the special two-generator case.

Series are truncated at a fixed order (default 20) and all coefficient
comparisons are exact; there are no tolerances anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

DEFAULT_ORDER = 20


class TruncatedSeries:
    """Coefficients of t^0..t^order, exact rationals.

    Arithmetic results carry the minimum order of the operands.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[Fraction | int] = ()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        cs = [Fraction(c) for c in coeffs[: order + 1]]
        cs.extend(Fraction(0) for _ in range(order + 1 - len(cs)))
        self.coeffs = cs

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, [1])

    @classmethod
    def monomial(cls, power: int, order: int, coeff: Fraction | int = 1) -> "TruncatedSeries":
        s = cls(order)
        if 0 <= power <= order:
            s.coeffs[power] = Fraction(coeff)
        return s

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            return Fraction(0)
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [-a for a in self.coeffs])

    def scale(self, s: Fraction | int) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [a * s for a in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coeffs[: n + 1 - i]):
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(n, out)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("inverse requires constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[k - j]
            out[k] = -acc
        return TruncatedSeries(n, out)

    def log(self) -> "TruncatedSeries":
        """Formal logarithm; requires constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log requires constant term 1")
        n = self.order
        # c' * s = s'  solved coefficient by coefficient
        out = [Fraction(0)] * (n + 1)
        for k in range(1, n + 1):
            acc = Fraction(k) * self.coeffs[k]
            for j in range(1, k):
                acc -= Fraction(j) * out[j] * self.coeffs[k - j]
            out[k] = acc / k
        return TruncatedSeries(n, out)

    def exp(self) -> "TruncatedSeries":
        """Formal exponential; requires constant term 0."""
        if self.coeffs[0] != 0:
            raise ValueError("exp requires constant term 0")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += Fraction(j) * self.coeffs[j] * out[k - j]
            out[k] = acc / k
        return TruncatedSeries(n, out)

    def substitute_power(self, l: int) -> "TruncatedSeries":
        """The series with t replaced by t**l (l a positive integer)."""
        if l < 1:
            raise ValueError("substitution power must be positive")
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a and i * l <= self.order:
                out[i * l] = a
        return TruncatedSeries(self.order, out)

    def integer_coeffs(self) -> list[int]:
        """Coefficients as ints; raises if any is not an integer."""
        out = []
        for i, a in enumerate(self.coeffs):
            if a.denominator != 1:
                raise ValueError(f"coefficient of t^{i} is not an integer: {a}")
            out.append(a.numerator)
        return out

    def __repr__(self):
        terms = [f"{a}*t^{i}" for i, a in enumerate(self.coeffs) if a]
        return "TruncatedSeries(" + (" + ".join(terms) if terms else "0") + f"; order={self.order})"


def polynomial(coeffs: Mapping[int, Fraction | int] | Sequence[Fraction | int], order: int) -> TruncatedSeries:
    """Series from a dense list or a {power: coeff} mapping."""
    s = TruncatedSeries(order)
    if isinstance(coeffs, Mapping):
        for p, c in coeffs.items():
            if 0 <= p <= order:
                s.coeffs[p] = Fraction(c)
    else:
        for p, c in enumerate(coeffs):
            if p <= order:
                s.coeffs[p] = Fraction(c)
    return s


def euler_phi(l: int) -> int:
    """Euler totient by trial factorization (only small l occur here)."""
    if l < 1:
        raise ValueError("euler_phi needs a positive integer")
    result = l
    m = l
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def ym_hilbert(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Hilbert series of YM(n): 1 / ((1 - t^2)(1 - n t + t^2))."""
    if n < 2:
        raise ValueError("need at least two generators")
    denom = polynomial({0: 1, 2: -1}, order) * polynomial({0: 1, 1: -n, 2: 1}, order)
    return denom.inverse()


def w_hilbert(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Hilbert series of W(n): ((1-t)^n - 1 + n t - n t^3 + t^4) / (1-t)^n."""
    if n < 2:
        raise ValueError("need at least two generators")
    one_minus_t = polynomial({0: 1, 1: -1}, order)
    pw = TruncatedSeries.one(order)
    for _ in range(n):
        pw = pw * one_minus_t
    num = pw - TruncatedSeries.one(order) + polynomial({1: n, 3: -n, 4: 1}, order)
    return num * pw.inverse()


def _log_arg(n: int, l: int, order: int) -> TruncatedSeries:
    return polynomial({0: 1, l: -n, 3 * l: n, 4 * l: -1}, order)


def chi_hc(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Euler characteristic series of reduced cyclic homology.

    Equals ``- sum_{l>=1} (phi(l)/l) log(1 - n t^l + n t^{3l} - t^{4l})``;
    only l <= order contribute at this truncation.  All coefficients are
    integers, which :func:`hh_series` relies on.
    """
    if n < 2:
        raise ValueError("need at least two generators")
    total = TruncatedSeries.zero(order)
    for l in range(1, order + 1):
        term = _log_arg(n, l, order).log().scale(Fraction(euler_phi(l), l))
        total = total - term
    return total


def hh_series(n: int, i: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Hilbert series of the i-th Hochschild homology of YM(n), n >= 3."""
    if n < 3:
        raise ValueError("closed forms here require n >= 3; use ym2_hh_series for n == 2")
    if i < 0:
        raise ValueError("homological degree must be nonnegative")
    if i >= 4:
        return TruncatedSeries.zero(order)
    if i == 3:
        return polynomial({4: 1}, order)
    if i == 2:
        return polynomial({3: n, 4: n * (n - 1) // 2 + 1}, order)
    chi = chi_hc(n, order)
    if i == 1:
        return chi + polynomial({3: 2 * n, 4: n * (n - 1) - 1}, order)
    return chi + polynomial({0: 1, 3: n, 4: n * (n - 1) // 2 - 1}, order)


def hc_series(n: int, i: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Hilbert series of the i-th cyclic homology of YM(n), n >= 3."""
    if n < 3:
        raise ValueError("closed forms here require n >= 3; use ym2_hc_series for n == 2")
    if i < 0:
        raise ValueError("homological degree must be nonnegative")
    if i == 0:
        return hh_series(n, 0, order)
    if i == 1:
        return polynomial({3: n, 4: n * (n - 1) // 2}, order)
    if i == 2:
        return polynomial({0: 1, 4: 1}, order)
    if i % 2 == 1:
        return TruncatedSeries.zero(order)
    return TruncatedSeries.one(order)


def ym2_hh_series(i: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Hochschild homology series of the two-generator algebra."""
    if i < 0:
        raise ValueError("homological degree must be nonnegative")
    if i >= 4:
        return TruncatedSeries.zero(order)
    inv_1mt = polynomial({0: 1, 1: -1}, order).inverse()
    inv_1mt2 = polynomial({0: 1, 2: -1}, order).inverse()
    if i == 0:
        return inv_1mt * inv_1mt
    if i == 1:
        # t (2 - t) (1 + t^2) / (1 - t)^2
        return polynomial({1: 2, 2: -1}, order) * polynomial({0: 1, 2: 1}, order) * inv_1mt * inv_1mt
    if i == 2:
        # 2 t^3 (1 + t - t^2) / ((1 - t^2)(1 - t))
        return polynomial({3: 2, 4: 2, 5: -2}, order) * inv_1mt2 * inv_1mt
    return polynomial({4: 1}, order) * inv_1mt2


def ym2_hc_series(i: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Cyclic homology series of the two-generator algebra."""
    if i < 0:
        raise ValueError("homological degree must be nonnegative")
    inv_1mt = polynomial({0: 1, 1: -1}, order).inverse()
    if i == 0:
        return inv_1mt * inv_1mt
    if i == 1:
        # (2 - t) t^3 / (1 - t)^2
        return polynomial({3: 2, 4: -1}, order) * inv_1mt * inv_1mt
    if i == 2:
        return TruncatedSeries.one(order) + polynomial({4: 1}, order) * polynomial({0: 1, 2: -1}, order).inverse()
    if i % 2 == 1:
        return TruncatedSeries.zero(order)
    return TruncatedSeries.one(order)


def reduced_hh(n: int, i: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Reduced Hochschild series: degree 0 drops the ground-field line."""
    s = hh_series(n, i, order)
    if i == 0:
        return s - TruncatedSeries.one(order)
    return s


def reduced_hc(n: int, i: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Reduced cyclic series: even degrees drop the ground-field line."""
    s = hc_series(n, i, order)
    if i % 2 == 0:
        return s - TruncatedSeries.one(order)
    return s


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries) -> int | None:
    """Lowest power where the two series differ, or None if equal."""
    n = min(a.order, b.order)
    for k in range(n + 1):
        if a.coeffs[k] != b.coeffs[k]:
            return k
    return None


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    first_mismatch_power: int | None = None
    lhs_coefficient: Fraction | None = None
    rhs_coefficient: Fraction | None = None


@dataclass
class IdentityReport:
    n: int
    order: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_series_identities(
    n: int,
    order: int = DEFAULT_ORDER,
    hh_overrides: Mapping[int, TruncatedSeries] | None = None,
) -> IdentityReport:
    """Check the series identities tying the closed forms together.

    Verified on the closed forms, coefficient-exactly up to ``order``:

    * the alternating sum of reduced Hochschild series vanishes (forced by
      the Koszul property of the algebra);
    * the reduced cyclic series are the standard combinations of the reduced
      Hochschild series in degrees 0..2 and vanish/stabilise above;
    * each reduced Hochschild series splits as consecutive reduced cyclic
      series (the short exact sequences from Connes' long exact sequence);
    * the weighted alternating sum ``sum (-1)^i (3-i) hh_i`` reproduces the
      cyclic Euler characteristic series.

    ``hh_overrides`` replaces chosen reduced Hochschild series and exists so
    callers (and tests) can confirm a deliberately injected fault is caught.
    """
    if n < 3:
        raise ValueError("identity suite applies to n >= 3")
    hh = {i: reduced_hh(n, i, order) for i in range(5)}
    if hh_overrides:
        hh.update(hh_overrides)
    hc = {i: reduced_hc(n, i, order) for i in range(7)}
    chi = chi_hc(n, order)
    report = IdentityReport(n=n, order=order)

    def check(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries):
        k = first_mismatch(lhs, rhs)
        if k is None:
            report.checks.append(IdentityCheck(name, True))
        else:
            report.checks.append(IdentityCheck(name, False, k, lhs.coeffs[k], rhs.coeffs[k]))

    zero = TruncatedSeries.zero(order)
    alt = zero
    for i in range(4):
        alt = alt + hh[i].scale((-1) ** i)
    check("koszul-alternating-sum", alt, zero)
    check("cyclic-degree2-from-hochschild", hc[2], hh[3])
    check("cyclic-degree1-from-hochschild", hc[1], hh[2] - hh[3])
    check("cyclic-degree0-from-hochschild", hc[0], hh[0])
    for i in range(5):
        lower = hc[i - 1] if i >= 1 else zero
        check(f"connes-splitting-degree{i}", hh[i], lower + hc[i])
    weighted = zero
    for i in range(4):
        weighted = weighted + hh[i].scale((-1) ** i * (3 - i))
    check("cyclic-euler-characteristic", weighted, chi)
    return report
